#include "fillvol/ring.hpp"

#include "fillvol/errors.hpp"

#include <algorithm>

namespace fillvol {

namespace {

void verify_tables(const RingTables& t) {
    const size_t n = t.add.size();
    if (n < 2) throw DomainError("table ring needs at least two elements (1 != 0)");
    if (n > 64) throw DomainError("table ring limited to 64 elements");
    if (t.mul.size() != n) throw DomainError("table ring: add/mul size mismatch");
    auto in_range = [&](int x) { return x >= 0 && static_cast<size_t>(x) < n; };
    if (!in_range(t.zero) || !in_range(t.one) || t.zero == t.one)
        throw DomainError("table ring: bad zero/one");
    for (size_t i = 0; i < n; ++i) {
        if (t.add[i].size() != n || t.mul[i].size() != n)
            throw DomainError("table ring: ragged table");
        for (size_t j = 0; j < n; ++j)
            if (!in_range(t.add[i][j]) || !in_range(t.mul[i][j]))
                throw DomainError("table ring: entry out of range");
    }
    const auto& A = t.add;
    const auto& M = t.mul;
    const int z = t.zero, o = t.one;
    for (size_t i = 0; i < n; ++i) {
        if (A[i][z] != static_cast<int>(i) || A[z][i] != static_cast<int>(i))
            throw DomainError("table ring: zero is not additive identity");
        if (M[i][o] != static_cast<int>(i) || M[o][i] != static_cast<int>(i))
            throw DomainError("table ring: one is not multiplicative identity");
        if (M[i][z] != z || M[z][i] != z)
            throw DomainError("table ring: zero does not annihilate");
        bool has_neg = false;
        for (size_t j = 0; j < n; ++j)
            if (A[i][j] == z) has_neg = true;
        if (!has_neg) throw DomainError("table ring: missing additive inverse");
        for (size_t j = 0; j < n; ++j)
            if (A[i][j] != A[j][i]) throw DomainError("table ring: addition not commutative");
    }
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b)
            for (size_t c = 0; c < n; ++c) {
                if (A[A[a][b]][c] != A[a][A[b][c]])
                    throw DomainError("table ring: addition not associative");
                if (M[M[a][b]][c] != M[a][M[b][c]])
                    throw DomainError("table ring: multiplication not associative");
                if (M[a][A[b][c]] != A[M[a][b]][M[a][c]] ||
                    M[A[a][b]][c] != A[M[a][c]][M[b][c]])
                    throw DomainError("table ring: distributivity fails");
            }
}

long to_index(const RElem& x) {
    return static_cast<long>(boost::multiprecision::numerator(x));
}

}  // namespace

Ring Ring::integers() {
    Ring r;
    r.kind_ = RingKind::Integers;
    return r;
}

Ring Ring::rationals() {
    Ring r;
    r.kind_ = RingKind::Rationals;
    return r;
}

Ring Ring::modular(long m) {
    if (m < 2) throw DomainError("modulus must be >= 2 (1 != 0)");
    Ring r;
    r.kind_ = RingKind::Modular;
    r.size_ = m;
    return r;
}

Ring Ring::prime_field(long p) {
    if (p < 2) throw DomainError("field characteristic must be >= 2");
    for (long d = 2; d * d <= p; ++d)
        if (p % d == 0) throw DomainError("prime field characteristic is not prime");
    Ring r;
    r.kind_ = RingKind::PrimeField;
    r.size_ = p;
    return r;
}

Ring Ring::table(RingTables t) {
    verify_tables(t);
    Ring r;
    r.kind_ = RingKind::Table;
    r.size_ = static_cast<long>(t.add.size());
    r.tables_ = std::make_shared<const RingTables>(std::move(t));
    return r;
}

bool Ring::is_field() const {
    switch (kind_) {
        case RingKind::Rationals:
        case RingKind::PrimeField:
            return true;
        default:
            return false;
    }
}

RElem Ring::one() const {
    if (kind_ == RingKind::Table) return RElem(tables_->one);
    return RElem(1);
}

RElem Ring::from_int(const Int& n) const {
    switch (kind_) {
        case RingKind::Integers:
        case RingKind::Rationals:
            return RElem(n);
        case RingKind::Modular:
        case RingKind::PrimeField: {
            Int m = size_;
            Int v = n % m;
            if (v < 0) v += m;
            return RElem(v);
        }
        case RingKind::Table: {
            // n copies of 1 added together
            Int m = n;
            int acc = tables_->zero;
            bool negate = m < 0;
            if (negate) m = -m;
            for (Int i = 0; i < m; ++i) acc = tables_->add[acc][tables_->one];
            if (negate) {
                for (long j = 0; j < size_; ++j)
                    if (tables_->add[acc][j] == tables_->zero) return RElem(j);
            }
            return RElem(acc);
        }
    }
    throw DomainError("unreachable ring kind");
}

void Ring::check_element(const RElem& x) const {
    if (!contains(x)) throw DomainError("element does not belong to ring");
}

bool Ring::contains(const RElem& x) const {
    switch (kind_) {
        case RingKind::Rationals:
            return true;
        case RingKind::Integers:
            return boost::multiprecision::denominator(x) == 1;
        default: {
            if (boost::multiprecision::denominator(x) != 1) return false;
            Int v = boost::multiprecision::numerator(x);
            return v >= 0 && v < size_;
        }
    }
}

RElem Ring::add(const RElem& a, const RElem& b) const {
    check_element(a);
    check_element(b);
    switch (kind_) {
        case RingKind::Integers:
        case RingKind::Rationals:
            return a + b;
        case RingKind::Modular:
        case RingKind::PrimeField: {
            Int v = boost::multiprecision::numerator(a) + boost::multiprecision::numerator(b);
            if (v >= size_) v -= size_;
            return RElem(v);
        }
        case RingKind::Table:
            return RElem(tables_->add[to_index(a)][to_index(b)]);
    }
    throw DomainError("unreachable ring kind");
}

RElem Ring::neg(const RElem& a) const {
    check_element(a);
    switch (kind_) {
        case RingKind::Integers:
        case RingKind::Rationals:
            return -a;
        case RingKind::Modular:
        case RingKind::PrimeField: {
            if (a == 0) return a;
            return RElem(Int(size_) - boost::multiprecision::numerator(a));
        }
        case RingKind::Table: {
            long i = to_index(a);
            for (long j = 0; j < size_; ++j)
                if (tables_->add[i][j] == tables_->zero) return RElem(j);
            throw DomainError("table ring: missing additive inverse");
        }
    }
    throw DomainError("unreachable ring kind");
}

RElem Ring::mul(const RElem& a, const RElem& b) const {
    check_element(a);
    check_element(b);
    switch (kind_) {
        case RingKind::Integers:
        case RingKind::Rationals:
            return a * b;
        case RingKind::Modular:
        case RingKind::PrimeField: {
            Int v = boost::multiprecision::numerator(a) * boost::multiprecision::numerator(b);
            return RElem(v % size_);
        }
        case RingKind::Table:
            return RElem(tables_->mul[to_index(a)][to_index(b)]);
    }
    throw DomainError("unreachable ring kind");
}

RElem Ring::inv(const RElem& a) const {
    check_element(a);
    if (is_zero(a)) throw DomainError("division by zero");
    switch (kind_) {
        case RingKind::Rationals:
            return 1 / a;
        case RingKind::PrimeField: {
            // extended Euclid
            Int x = boost::multiprecision::numerator(a), m = size_;
            Int t0 = 0, t1 = 1, r0 = m, r1 = x;
            while (r1 != 0) {
                Int q = r0 / r1;
                Int tmp = t0 - q * t1;
                t0 = t1;
                t1 = tmp;
                tmp = r0 - q * r1;
                r0 = r1;
                r1 = tmp;
            }
            if (t0 < 0) t0 += m;
            return RElem(t0);
        }
        case RingKind::Table: {
            long i = to_index(a);
            for (long j = 0; j < size_; ++j)
                if (tables_->mul[i][j] == tables_->one && tables_->mul[j][i] == tables_->one)
                    return RElem(j);
            throw DomainError("element is not a unit");
        }
        default:
            throw DomainError("ring has no general inverses");
    }
}

std::vector<RElem> Ring::elements() const {
    if (!finite()) throw UnsupportedError("cannot enumerate an infinite ring");
    std::vector<RElem> out;
    out.reserve(static_cast<size_t>(size_));
    for (long i = 0; i < size_; ++i) out.emplace_back(i);
    return out;
}

std::string Ring::to_string(const RElem& x) const { return rat_to_string(x); }

bool Ring::same_as(const Ring& other) const {
    if (kind_ != other.kind_ || size_ != other.size_) return false;
    if (kind_ == RingKind::Table) {
        return tables_->add == other.tables_->add && tables_->mul == other.tables_->mul &&
               tables_->zero == other.tables_->zero && tables_->one == other.tables_->one;
    }
    return true;
}

Norm Norm::absolute() {
    Norm n;
    n.kind = NormKind::Absolute;
    return n;
}

Norm Norm::discrete() {
    Norm n;
    n.kind = NormKind::Discrete;
    return n;
}

Norm Norm::scaled(Norm base, Rat factor) {
    if (factor <= 0) throw DomainError("scaling factor must be positive");
    Norm n;
    n.kind = NormKind::Scaled;
    n.factor = std::move(factor);
    n.base = std::make_shared<const Norm>(std::move(base));
    return n;
}

Norm Norm::symmetrized(Norm base) {
    Norm n;
    n.kind = NormKind::Symmetrized;
    n.base = std::make_shared<const Norm>(std::move(base));
    return n;
}

Norm Norm::from_table(std::vector<Rat> values) {
    Norm n;
    n.kind = NormKind::Table;
    n.table = std::move(values);
    return n;
}

Rat norm_value(const Ring& ring, const Norm& norm, const RElem& x) {
    if (!ring.contains(x)) throw DomainError("norm of element outside ring");
    switch (norm.kind) {
        case NormKind::Absolute:
            if (ring.kind() != RingKind::Integers && ring.kind() != RingKind::Rationals)
                throw DomainError("absolute norm only defined over Z and Q");
            return rat_abs(x);
        case NormKind::Discrete:
            return ring.is_zero(x) ? Rat(0) : Rat(1);
        case NormKind::Scaled:
            return norm.factor * norm_value(ring, *norm.base, x);
        case NormKind::Symmetrized:
            return norm_value(ring, *norm.base, x) + norm_value(ring, *norm.base, ring.neg(x));
        case NormKind::Table: {
            if (ring.kind() != RingKind::Table && ring.kind() != RingKind::Modular &&
                ring.kind() != RingKind::PrimeField)
                throw DomainError("table norm requires a finite ring");
            size_t i = static_cast<size_t>(to_index(x));
            if (i >= norm.table.size()) throw DomainError("table norm: index out of range");
            return norm.table[i];
        }
    }
    throw DomainError("unreachable norm kind");
}

Norm symmetrize(const Norm& norm) { return Norm::symmetrized(norm); }

namespace {

// True when |.| is a positive multiple of the discrete norm.
bool discrete_based(const Norm& n) {
    switch (n.kind) {
        case NormKind::Discrete:
            return true;
        case NormKind::Scaled:
        case NormKind::Symmetrized:
            return discrete_based(*n.base);
        default:
            return false;
    }
}

// For norms over Z/Q of the shape (scaled/symmetrized)* over Absolute, the
// norm is c*|x|_abs; returns c.
std::optional<Rat> absolute_scale(const Norm& n) {
    switch (n.kind) {
        case NormKind::Absolute:
            return Rat(1);
        case NormKind::Scaled: {
            auto b = absolute_scale(*n.base);
            if (!b) return std::nullopt;
            return n.factor * *b;
        }
        case NormKind::Symmetrized: {
            auto b = absolute_scale(*n.base);
            if (!b) return std::nullopt;
            return 2 * *b;
        }
        default:
            return std::nullopt;
    }
}

}  // namespace

std::optional<Rat> separation(const Ring& ring, const Norm& norm) {
    if (ring.finite()) {
        Rat best = 0;
        bool first = true;
        for (const auto& x : ring.elements()) {
            if (ring.is_zero(x)) continue;
            Rat v = norm_value(ring, norm, x);
            if (first || v < best) {
                best = v;
                first = false;
            }
        }
        if (first) throw DomainError("ring has no nonzero element");
        return best > 0 ? std::optional<Rat>(best) : std::nullopt;
    }
    if (discrete_based(norm)) return norm_value(ring, norm, ring.one());
    if (auto c = absolute_scale(norm)) {
        if (ring.kind() == RingKind::Integers) return *c;       // min at |x|=1
        if (ring.kind() == RingKind::Rationals) return std::nullopt;  // 1/n -> 0
    }
    throw UnsupportedError("separation undecidable for this ring/norm combination");
}

Norm rescale_to_one_separated(const Ring& ring, const Norm& norm) {
    auto eps = separation(ring, norm);
    if (!eps) throw UnsupportedError("norm is not separated; cannot rescale");
    if (*eps >= 1) return norm;
    return Norm::scaled(norm, 1 / *eps);
}

std::vector<RElem> ring_ball(const Ring& ring, const Norm& norm, const Rat& l) {
    if (l < 0) throw DomainError("ball radius must be nonnegative");
    std::vector<RElem> out;
    if (ring.finite()) {
        for (const auto& x : ring.elements())
            if (norm_value(ring, norm, x) <= l) out.push_back(x);
        return out;
    }
    if (ring.kind() == RingKind::Integers) {
        if (discrete_based(norm)) {
            if (norm_value(ring, norm, ring.one()) > l) return {RElem(0)};
            throw UnsupportedError("discrete ball over Z is infinite");
        }
        if (auto c = absolute_scale(norm)) {
            Int bound = rat_floor(l / *c);
            for (Int v = -bound; v <= bound; ++v) out.emplace_back(v);
            return out;
        }
    }
    if (ring.kind() == RingKind::Rationals) {
        if (discrete_based(norm) && norm_value(ring, norm, ring.one()) > l) return {RElem(0)};
        throw UnsupportedError("ball over Q is infinite");
    }
    throw UnsupportedError("ring ball has no closed form here");
}

void validate_norm(const Ring& ring, const Norm& norm) {
    switch (norm.kind) {
        case NormKind::Absolute:
            if (ring.kind() != RingKind::Integers && ring.kind() != RingKind::Rationals)
                throw DomainError("absolute norm only valid over Z and Q");
            break;
        case NormKind::Discrete:
            break;
        case NormKind::Scaled:
            if (norm.factor <= 0) throw DomainError("scaling factor must be positive");
            validate_norm(ring, *norm.base);
            break;
        case NormKind::Symmetrized:
            validate_norm(ring, *norm.base);
            break;
        case NormKind::Table: {
            if (!ring.finite()) throw DomainError("table norm requires a finite ring");
            if (static_cast<long>(norm.table.size()) != ring.size())
                throw DomainError("table norm: wrong number of values");
            for (const auto& x : ring.elements()) {
                Rat v = norm_value(ring, norm, x);
                if (v < 0) throw DomainError("table norm: negative value");
                if ((v == 0) != ring.is_zero(x))
                    throw DomainError("table norm: |x| = 0 must hold exactly for x = 0");
            }
            // full axiom check, rings are small
            for (const auto& x : ring.elements())
                for (const auto& y : ring.elements()) {
                    if (norm_value(ring, norm, ring.add(x, y)) >
                        norm_value(ring, norm, x) + norm_value(ring, norm, y))
                        throw DomainError("table norm: triangle inequality fails");
                    if (norm_value(ring, norm, ring.mul(x, y)) >
                        norm_value(ring, norm, x) * norm_value(ring, norm, y))
                        throw DomainError("table norm: submultiplicativity fails");
                }
            break;
        }
    }
}

}  // namespace fillvol

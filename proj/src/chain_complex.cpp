#include "fillvol/chain_complex.hpp"

#include <sstream>

namespace fillvol {

FreeComplex::FreeComplex(Ring ring, Norm norm, GroupModel group, std::vector<DegreeData> degrees)
    : ring_(std::move(ring)),
      norm_(std::move(norm)),
      group_(std::move(group)),
      degrees_(std::move(degrees)) {
    validate_norm(ring_, norm_);
    validate();
    verify_d_squared();
}

void FreeComplex::validate() const {
    if (degrees_.empty()) throw ComplexError("complex has no degrees");
    for (size_t i = 0; i < degrees_.size(); ++i) {
        const auto& d = degrees_[i];
        if (d.boundary.size() != d.basis_names.size())
            throw ComplexError("degree " + std::to_string(i) + ": boundary table size mismatch");
        for (size_t b = 0; b < d.boundary.size(); ++b) {
            if (i == 0 && !d.boundary[b].empty())
                throw ComplexError("degree 0 cells cannot have boundary terms");
            for (const auto& term : d.boundary[b]) {
                if (ring_.is_zero(term.coeff))
                    throw ComplexError("zero coefficient in boundary of " + d.basis_names[b]);
                if (i == 0 || term.target < 0 ||
                    term.target >= static_cast<int>(degrees_[i - 1].basis_names.size()))
                    throw ComplexError("dangling basis reference in boundary of " +
                                       d.basis_names[b]);
                if (!group_.contains(term.g))
                    throw ComplexError("invalid group element in boundary of " + d.basis_names[b]);
            }
        }
    }
}

int FreeComplex::rank(int degree) const {
    if (degree < 0 || degree > max_degree()) return 0;
    return static_cast<int>(degrees_[static_cast<size_t>(degree)].basis_names.size());
}

const FreeComplex::DegreeData& FreeComplex::degree_data(int degree) const {
    if (degree < 0 || degree > max_degree()) throw DomainError("degree out of loaded range");
    return degrees_[static_cast<size_t>(degree)];
}

const std::string& FreeComplex::basis_name(int degree, int basis) const {
    const auto& d = degree_data(degree);
    if (basis < 0 || basis >= static_cast<int>(d.basis_names.size()))
        throw DomainError("basis index out of range");
    return d.basis_names[static_cast<size_t>(basis)];
}

Chain FreeComplex::make_chain(int degree, const std::vector<std::pair<Cell, RElem>>& terms) const {
    if (degree < 0 || degree > max_degree()) throw DomainError("degree out of loaded range");
    Chain c{degree, {}};
    for (const auto& [cell, r] : terms) {
        if (cell.basis < 0 || cell.basis >= rank(degree))
            throw DomainError("cell basis index out of range");
        if (!group_.contains(cell.g)) throw DomainError("cell group element outside group");
        if (ring_.is_zero(r)) continue;
        auto it = c.coeffs.find(cell);
        if (it == c.coeffs.end()) {
            c.coeffs[cell] = r;
        } else {
            it->second = ring_.add(it->second, r);
            if (ring_.is_zero(it->second)) c.coeffs.erase(it);
        }
    }
    return c;
}

Chain FreeComplex::add(const Chain& a, const Chain& b) const {
    if (a.degree != b.degree) throw DomainError("cannot add chains of different degree");
    Chain out = a;
    for (const auto& [cell, r] : b.coeffs) {
        auto it = out.coeffs.find(cell);
        if (it == out.coeffs.end()) {
            out.coeffs[cell] = r;
        } else {
            it->second = ring_.add(it->second, r);
            if (ring_.is_zero(it->second)) out.coeffs.erase(it);
        }
    }
    return out;
}

Chain FreeComplex::negate(const Chain& a) const {
    Chain out{a.degree, {}};
    for (const auto& [cell, r] : a.coeffs) out.coeffs[cell] = ring_.neg(r);
    return out;
}

Chain FreeComplex::scale(const RElem& r, const Chain& a) const {
    Chain out{a.degree, {}};
    if (ring_.is_zero(r)) return out;
    for (const auto& [cell, c] : a.coeffs) {
        RElem v = ring_.mul(r, c);
        if (!ring_.is_zero(v)) out.coeffs[cell] = v;
    }
    return out;
}

Chain FreeComplex::translate(const GroupElem& gamma, const Chain& a) const {
    Chain out{a.degree, {}};
    for (const auto& [cell, r] : a.coeffs)
        out.coeffs[Cell{cell.basis, group_.multiply(gamma, cell.g)}] = r;
    return out;
}

Chain FreeComplex::boundary_of_cell(int degree, const Cell& cell) const {
    if (degree < 1) throw DomainError("boundary needs degree >= 1");
    const auto& d = degree_data(degree);
    if (cell.basis < 0 || cell.basis >= static_cast<int>(d.boundary.size()))
        throw DomainError("cell basis index out of range");
    Chain out{degree - 1, {}};
    for (const auto& term : d.boundary[static_cast<size_t>(cell.basis)]) {
        Cell target{term.target, group_.multiply(cell.g, term.g)};
        auto it = out.coeffs.find(target);
        if (it == out.coeffs.end()) {
            out.coeffs[target] = term.coeff;
        } else {
            it->second = ring_.add(it->second, term.coeff);
            if (ring_.is_zero(it->second)) out.coeffs.erase(it);
        }
    }
    return out;
}

Chain FreeComplex::boundary(const Chain& c) const {
    if (c.degree < 1) throw DomainError("boundary needs degree >= 1");
    Chain out{c.degree - 1, {}};
    for (const auto& [cell, r] : c.coeffs)
        out = add(out, scale(r, boundary_of_cell(c.degree, cell)));
    return out;
}

Rat FreeComplex::chain_norm(const Chain& c, bool weighted) const {
    Rat sum = 0;
    for (const auto& [cell, r] : c.coeffs) {
        Rat v = norm_value(ring_, norm_, r);
        if (weighted) v *= Rat(1 + group_.word_length(cell.g));
        sum += v;
    }
    return sum;
}

void FreeComplex::verify_d_squared() const {
    for (int i = 2; i <= max_degree(); ++i) {
        for (int b = 0; b < rank(i); ++b) {
            Cell cell{b, group_.identity()};
            Chain dd = boundary(boundary_of_cell(i, cell));
            if (!dd.is_zero())
                throw ComplexError("d^2 != 0 on basis cell " + basis_name(i, b) + " in degree " +
                                   std::to_string(i));
        }
    }
}

std::string FreeComplex::cell_to_string(int degree, const Cell& cell) const {
    std::ostringstream os;
    os << group_.to_string(cell.g) << "*" << basis_name(degree, cell.basis);
    return os.str();
}

std::string FreeComplex::chain_to_string(const Chain& c) const {
    if (c.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [cell, r] : c.coeffs) {
        if (!first) os << " + ";
        os << ring_.to_string(r) << "*" << cell_to_string(c.degree, cell);
        first = false;
    }
    return os.str();
}

// --- built-ins ----------------------------------------------------------

FreeComplex builtin_cyclic_resolution(long long k, int n_max, Ring ring, Norm norm) {
    if (k < 2) throw DomainError("cyclic resolution needs k >= 2");
    if (n_max < 1) throw DomainError("cyclic resolution needs n_max >= 1");
    GroupModel group = GroupModel::cyclic(k, {});
    std::vector<FreeComplex::DegreeData> degrees;
    degrees.push_back({{"b0"}, {{}}});
    for (int i = 1; i <= n_max; ++i) {
        FreeComplex::DegreeData d;
        d.basis_names = {"b" + std::to_string(i)};
        std::vector<BoundaryTerm> terms;
        if (i % 2 == 1) {
            // multiplication by (1 - t)
            terms.push_back({{}, group.identity(), 0, ring.one()});
            terms.push_back({{1}, group.word({1}), 0, ring.neg(ring.one())});
        } else {
            // multiplication by N = sum t^j
            for (long long j = 0; j < k; ++j) {
                std::vector<int> w(static_cast<size_t>(j), 1);
                terms.push_back({w, group.word(w), 0, ring.one()});
            }
        }
        // merge cancelling terms up front (k = 2 over F_2 etc. stay nonzero
        // here; genuine cancellation is handled by boundary())
        std::vector<BoundaryTerm> merged;
        for (auto& t : terms) {
            bool found = false;
            for (auto& m : merged)
                if (m.g == t.g && m.target == t.target) {
                    m.coeff = ring.add(m.coeff, t.coeff);
                    found = true;
                }
            if (!found) merged.push_back(t);
        }
        std::erase_if(merged, [&](const BoundaryTerm& t) { return ring.is_zero(t.coeff); });
        d.boundary = {merged};
        degrees.push_back(std::move(d));
    }
    return FreeComplex(std::move(ring), std::move(norm), std::move(group), std::move(degrees));
}

FreeComplex builtin_cayley_complex(GroupModel group, Ring ring, Norm norm) {
    std::vector<FreeComplex::DegreeData> degrees;
    degrees.push_back({{"v"}, {{}}});
    FreeComplex::DegreeData d1;
    for (size_t s = 0; s < group.generators().size(); ++s) {
        d1.basis_names.push_back("e" + std::to_string(s));
        std::vector<BoundaryTerm> terms;
        int letter = static_cast<int>(s) + 1;
        GroupElem gs = group.generators()[s];
        BoundaryTerm plus{{letter}, gs, 0, ring.one()};
        BoundaryTerm minus{{}, group.identity(), 0, ring.neg(ring.one())};
        if (gs == group.identity()) {
            // s = e would give d(e_s) = 0; still store the cancelled pair? No:
            // a generator equal to the identity makes a degenerate edge.
            throw DomainError("identity generator yields a degenerate Cayley edge");
        }
        terms.push_back(plus);
        terms.push_back(minus);
        d1.boundary.push_back(terms);
    }
    degrees.push_back(std::move(d1));
    return FreeComplex(std::move(ring), std::move(norm), std::move(group), std::move(degrees));
}

FreeComplex builtin_presentation_complex(GroupModel group, std::vector<std::vector<int>> relators,
                                         Ring ring, Norm norm) {
    FreeComplex cayley = builtin_cayley_complex(group, ring, norm);
    std::vector<FreeComplex::DegreeData> degrees = {cayley.degree_data(0), cayley.degree_data(1)};
    FreeComplex::DegreeData d2;
    for (size_t ri = 0; ri < relators.size(); ++ri) {
        const auto& rel = relators[ri];
        if (group.word(rel) != group.identity())
            throw DomainError("relator does not evaluate to the identity");
        d2.basis_names.push_back("r" + std::to_string(ri));
        // path-traversal boundary of the relator disc
        std::map<std::pair<int, GroupElem>, RElem> acc;
        GroupElem pos = group.identity();
        std::vector<int> prefix;
        for (int letter : rel) {
            if (letter == 0) throw DomainError("zero letter in relator");
            int gen = std::abs(letter) - 1;
            if (gen >= static_cast<int>(group.generators().size()))
                throw DomainError("relator letter out of range");
            GroupElem s = group.generators()[static_cast<size_t>(gen)];
            if (letter > 0) {
                auto key = std::make_pair(gen, pos);
                auto it = acc.find(key);
                RElem add = ring.one();
                acc[key] = it == acc.end() ? add : ring.add(it->second, add);
                pos = group.multiply(pos, s);
            } else {
                pos = group.multiply(pos, group.inverse(s));
                auto key = std::make_pair(gen, pos);
                auto it = acc.find(key);
                RElem add = ring.neg(ring.one());
                acc[key] = it == acc.end() ? add : ring.add(it->second, add);
            }
        }
        std::vector<BoundaryTerm> terms;
        for (const auto& [key, coeff] : acc) {
            if (ring.is_zero(coeff)) continue;
            terms.push_back({{}, key.second, key.first, coeff});
        }
        d2.boundary.push_back(std::move(terms));
    }
    degrees.push_back(std::move(d2));
    return FreeComplex(std::move(ring), std::move(norm), std::move(group), std::move(degrees));
}

FreeComplex builtin_z2_presentation_complex(Ring ring, Norm norm) {
    GroupModel z2 = GroupModel::free_abelian(2, {});
    // [x, y] = x y x^-1 y^-1
    return builtin_presentation_complex(std::move(z2), {{1, 2, -1, -2}}, std::move(ring),
                                        std::move(norm));
}

Chain commutator_cycle(const FreeComplex& z2_complex, long long n, const RElem& r) {
    if (n <= 0) throw DomainError("commutator cycle needs n >= 1");
    const GroupModel& g = z2_complex.group();
    if (g.kind() != GroupKind::FreeAbelian || g.rank() != 2)
        throw DomainError("commutator cycle lives in the Z^2 presentation complex");
    const Ring& ring = z2_complex.ring();
    std::vector<std::pair<Cell, RElem>> terms;
    auto at = [&](long long x, long long y) { return GroupElem{{x, y}}; };
    for (long long i = 0; i < n; ++i) {
        terms.push_back({Cell{0, at(i, 0)}, r});                    // x^i e_x
        terms.push_back({Cell{1, at(n, i)}, r});                    // x^n y^j e_y
        terms.push_back({Cell{0, at(i, n)}, ring.neg(r)});          // - y^n x^i e_x
        terms.push_back({Cell{1, at(0, i)}, ring.neg(r)});          // - y^j e_y
    }
    return z2_complex.make_chain(1, terms);
}

Chain commutator_cycle(const FreeComplex& z2_complex, long long n) {
    return commutator_cycle(z2_complex, n, z2_complex.ring().one());
}

}  // namespace fillvol

#include "fillvol/group.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace fillvol {

namespace {

long long elem_index(const GroupElem& g) { return g.v.empty() ? 0 : g.v[0]; }

}  // namespace

GroupModel GroupModel::trivial() {
    GroupModel g;
    g.kind_ = GroupKind::Trivial;
    g.order_ = 1;
    g.length_table_ = {0};
    return g;
}

GroupModel GroupModel::cyclic(long long k, std::vector<GroupElem> generators) {
    if (k < 1) throw DomainError("cyclic order must be >= 1");
    GroupModel g;
    g.kind_ = GroupKind::Cyclic;
    g.order_ = k;
    if (generators.empty()) generators.push_back(GroupElem{{1 % k}});
    g.generators_ = std::move(generators);
    for (const auto& s : g.generators_)
        if (!g.contains(s)) throw DomainError("generator outside group");
    g.build_length_table();
    return g;
}

GroupModel GroupModel::free_abelian(int rank, std::vector<GroupElem> generators) {
    if (rank < 1) throw DomainError("free abelian rank must be >= 1");
    GroupModel g;
    g.kind_ = GroupKind::FreeAbelian;
    g.order_ = 0;
    g.rank_ = rank;
    if (generators.empty()) {
        for (int i = 0; i < rank; ++i) {
            GroupElem e{std::vector<long long>(rank, 0)};
            e.v[i] = 1;
            generators.push_back(std::move(e));
        }
    }
    g.generators_ = std::move(generators);
    for (const auto& s : g.generators_)
        if (!g.contains(s)) throw DomainError("generator outside group");
    g.standard_gens_ = g.standard_free_abelian_gens();
    if (!g.standard_gens_) {
        // verify the generators span Q^rank; otherwise they cannot generate Z^rank
        std::vector<std::vector<double>> m;
        for (const auto& s : g.generators_) {
            std::vector<double> row(s.v.begin(), s.v.end());
            m.push_back(row);
        }
        int r = 0;
        for (int col = 0; col < rank && r < static_cast<int>(m.size()); ++col) {
            int piv = -1;
            for (int i = r; i < static_cast<int>(m.size()); ++i)
                if (std::abs(m[i][col]) > 1e-9) {
                    piv = i;
                    break;
                }
            if (piv < 0) continue;
            std::swap(m[r], m[piv]);
            for (int i = 0; i < static_cast<int>(m.size()); ++i) {
                if (i == r) continue;
                double f = m[i][col] / m[r][col];
                for (int j = 0; j < rank; ++j) m[i][j] -= f * m[r][j];
            }
            ++r;
        }
        if (r < rank) throw DomainError("generators do not generate the group");
    }
    return g;
}

GroupModel GroupModel::finite_table(std::vector<std::vector<int>> mul, int identity,
                                    std::vector<GroupElem> generators) {
    const size_t n = mul.size();
    if (n == 0) throw DomainError("empty multiplication table");
    for (const auto& row : mul) {
        if (row.size() != n) throw DomainError("ragged multiplication table");
        for (int x : row)
            if (x < 0 || static_cast<size_t>(x) >= n)
                throw DomainError("multiplication table entry out of range");
    }
    if (identity < 0 || static_cast<size_t>(identity) >= n)
        throw DomainError("identity index out of range");
    for (size_t i = 0; i < n; ++i)
        if (mul[i][identity] != static_cast<int>(i) || mul[identity][i] != static_cast<int>(i))
            throw DomainError("identity is not neutral");
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b)
            for (size_t c = 0; c < n; ++c)
                if (mul[mul[a][b]][c] != mul[a][mul[b][c]])
                    throw DomainError("multiplication not associative");
    for (size_t i = 0; i < n; ++i) {
        bool has_inv = false;
        for (size_t j = 0; j < n; ++j)
            if (mul[i][j] == identity && mul[j][i] == identity) has_inv = true;
        if (!has_inv) throw DomainError("element without inverse");
    }
    GroupModel g;
    g.kind_ = GroupKind::FiniteTable;
    g.order_ = static_cast<long long>(n);
    g.mul_table_ = std::move(mul);
    g.identity_index_ = identity;
    if (generators.empty()) {
        for (size_t i = 0; i < n; ++i) generators.push_back(GroupElem{{static_cast<long long>(i)}});
    }
    g.generators_ = std::move(generators);
    for (const auto& s : g.generators_)
        if (!g.contains(s)) throw DomainError("generator outside group");
    g.build_length_table();
    return g;
}

bool GroupModel::standard_free_abelian_gens() const {
    if (static_cast<int>(generators_.size()) != rank_) return false;
    std::vector<bool> seen(rank_, false);
    for (const auto& s : generators_) {
        int nz = -1;
        for (int i = 0; i < rank_; ++i) {
            if (s.v[i] == 0) continue;
            if (nz >= 0 || (s.v[i] != 1 && s.v[i] != -1)) return false;
            nz = i;
        }
        if (nz < 0 || seen[nz]) return false;
        seen[nz] = true;
    }
    return true;
}

void GroupModel::build_length_table() {
    // BFS from identity over S u S^-1; also verifies that S generates.
    length_table_.assign(static_cast<size_t>(order_), -1);
    std::deque<GroupElem> queue;
    GroupElem e = identity();
    length_table_[static_cast<size_t>(elem_index(e))] = 0;
    queue.push_back(e);
    std::vector<GroupElem> steps;
    for (const auto& s : generators_) {
        steps.push_back(s);
        steps.push_back(inverse(s));
    }
    while (!queue.empty()) {
        GroupElem g = queue.front();
        queue.pop_front();
        long long d = length_table_[static_cast<size_t>(elem_index(g))];
        for (const auto& s : steps) {
            GroupElem h = multiply(g, s);
            auto& slot = length_table_[static_cast<size_t>(elem_index(h))];
            if (slot < 0) {
                slot = d + 1;
                queue.push_back(h);
            }
        }
    }
    for (long long d : length_table_)
        if (d < 0) throw DomainError("generators do not generate the group");
}

GroupElem GroupModel::identity() const {
    switch (kind_) {
        case GroupKind::Trivial:
        case GroupKind::Cyclic:
            return GroupElem{{0}};
        case GroupKind::FreeAbelian:
            return GroupElem{std::vector<long long>(rank_, 0)};
        case GroupKind::FiniteTable:
            return GroupElem{{identity_index_}};
    }
    throw DomainError("unreachable group kind");
}

bool GroupModel::contains(const GroupElem& g) const {
    switch (kind_) {
        case GroupKind::Trivial:
            return g.v.size() == 1 && g.v[0] == 0;
        case GroupKind::Cyclic:
        case GroupKind::FiniteTable:
            return g.v.size() == 1 && g.v[0] >= 0 && g.v[0] < order_;
        case GroupKind::FreeAbelian:
            return static_cast<int>(g.v.size()) == rank_;
    }
    return false;
}

GroupElem GroupModel::multiply(const GroupElem& g, const GroupElem& h) const {
    if (!contains(g) || !contains(h)) throw DomainError("element outside group");
    switch (kind_) {
        case GroupKind::Trivial:
            return g;
        case GroupKind::Cyclic:
            return GroupElem{{(g.v[0] + h.v[0]) % order_}};
        case GroupKind::FreeAbelian: {
            GroupElem out = g;
            for (int i = 0; i < rank_; ++i) out.v[i] += h.v[i];
            return out;
        }
        case GroupKind::FiniteTable:
            return GroupElem{{mul_table_[static_cast<size_t>(g.v[0])][static_cast<size_t>(h.v[0])]}};
    }
    throw DomainError("unreachable group kind");
}

GroupElem GroupModel::inverse(const GroupElem& g) const {
    if (!contains(g)) throw DomainError("element outside group");
    switch (kind_) {
        case GroupKind::Trivial:
            return g;
        case GroupKind::Cyclic:
            return GroupElem{{g.v[0] == 0 ? 0 : order_ - g.v[0]}};
        case GroupKind::FreeAbelian: {
            GroupElem out = g;
            for (auto& c : out.v) c = -c;
            return out;
        }
        case GroupKind::FiniteTable: {
            size_t i = static_cast<size_t>(g.v[0]);
            for (size_t j = 0; j < mul_table_.size(); ++j)
                if (mul_table_[i][j] == identity_index_) return GroupElem{{static_cast<long long>(j)}};
            throw DomainError("element without inverse");
        }
    }
    throw DomainError("unreachable group kind");
}

GroupElem GroupModel::word(const std::vector<int>& letters) const {
    GroupElem g = identity();
    for (int l : letters) {
        if (l == 0) throw DomainError("word letters are signed 1-based indices");
        size_t idx = static_cast<size_t>(std::abs(l)) - 1;
        if (idx >= generators_.size()) throw DomainError("word letter out of range");
        GroupElem s = generators_[idx];
        if (l < 0) s = inverse(s);
        g = multiply(g, s);
    }
    return g;
}

void GroupModel::ensure_bfs(long long radius) const {
    std::lock_guard<std::mutex> lock(memo_->mutex);
    if (memo_->explored_radius >= radius) return;
    if (radius > radius_cap_)
        throw BudgetError("word-length BFS radius cap exceeded (cap " +
                          std::to_string(radius_cap_) + ")");
    std::vector<GroupElem> steps;
    for (const auto& s : generators_) {
        steps.push_back(s);
        steps.push_back(inverse(s));
    }
    if (memo_->explored_radius < 0) {
        memo_->dist[identity()] = 0;
        memo_->frontier = {identity()};
        memo_->explored_radius = 0;
    }
    while (memo_->explored_radius < radius) {
        std::vector<GroupElem> next;
        for (const auto& g : memo_->frontier) {
            for (const auto& s : steps) {
                GroupElem h = multiply(g, s);
                if (memo_->dist.emplace(h, memo_->explored_radius + 1).second) next.push_back(h);
            }
        }
        memo_->frontier = std::move(next);
        ++memo_->explored_radius;
    }
}

long long GroupModel::word_length(const GroupElem& g) const {
    if (!contains(g)) throw DomainError("element outside group");
    switch (kind_) {
        case GroupKind::Trivial:
            return 0;
        case GroupKind::Cyclic:
        case GroupKind::FiniteTable:
            return length_table_[static_cast<size_t>(elem_index(g))];
        case GroupKind::FreeAbelian: {
            if (standard_gens_) {
                long long sum = 0;
                for (long long c : g.v) sum += std::llabs(c);
                return sum;
            }
            for (long long r = 0; r <= radius_cap_; ++r) {
                ensure_bfs(r);
                std::lock_guard<std::mutex> lock(memo_->mutex);
                auto it = memo_->dist.find(g);
                if (it != memo_->dist.end()) return it->second;
            }
            throw BudgetError("word length exceeds radius cap");
        }
    }
    throw DomainError("unreachable group kind");
}

std::vector<GroupElem> GroupModel::group_ball(long long radius) const {
    if (radius < 0) throw DomainError("radius must be nonnegative");
    std::vector<GroupElem> out;
    if (finite()) {
        for (long long i = 0; i < order_; ++i) {
            GroupElem g{{i}};
            if (word_length(g) <= radius) out.push_back(g);
        }
        return out;
    }
    if (standard_gens_) {
        // enumerate the l1 ball in Z^rank
        std::vector<long long> cur(rank_, 0);
        std::vector<GroupElem> acc;
        std::function<void(int, long long)> rec = [&](int i, long long left) {
            if (i == rank_) {
                acc.push_back(GroupElem{cur});
                return;
            }
            for (long long c = -left; c <= left; ++c) {
                cur[static_cast<size_t>(i)] = c;
                rec(i + 1, left - std::llabs(c));
            }
        };
        rec(0, radius);
        std::sort(acc.begin(), acc.end());
        return acc;
    }
    ensure_bfs(radius);
    std::lock_guard<std::mutex> lock(memo_->mutex);
    for (const auto& [g, d] : memo_->dist)
        if (d <= radius) out.push_back(g);
    return out;
}

bool GroupModel::same_as(const GroupModel& other) const {
    return kind_ == other.kind_ && order_ == other.order_ && rank_ == other.rank_ &&
           generators_ == other.generators_ && mul_table_ == other.mul_table_ &&
           identity_index_ == other.identity_index_;
}

std::string GroupModel::to_string(const GroupElem& g) const {
    std::ostringstream os;
    if (g.v.size() == 1) {
        os << g.v[0];
    } else {
        os << "(";
        for (size_t i = 0; i < g.v.size(); ++i) {
            if (i) os << ",";
            os << g.v[i];
        }
        os << ")";
    }
    return os.str();
}

}  // namespace fillvol

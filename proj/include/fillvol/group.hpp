#pragma once

#include "fillvol/errors.hpp"

#include <compare>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace fillvol {

enum class GroupKind { Trivial, Cyclic, FreeAbelian, FiniteTable };

// Canonical element form: a single index for Trivial/Cyclic/FiniteTable,
// the coordinate vector for FreeAbelian.
struct GroupElem {
    std::vector<long long> v;

    auto operator<=>(const GroupElem&) const = default;
};

// A finitely generated group with a fixed generating set and word metric.
// Immutable after construction; the word metric always uses S and S^-1.
class GroupModel {
  public:
    static GroupModel trivial();
    static GroupModel cyclic(long long k, std::vector<GroupElem> generators);
    static GroupModel free_abelian(int rank, std::vector<GroupElem> generators);
    static GroupModel finite_table(std::vector<std::vector<int>> mul, int identity,
                                   std::vector<GroupElem> generators);

    GroupKind kind() const { return kind_; }
    bool finite() const { return order_ != 0; }
    long long order() const { return order_; }  // 0 = infinite
    int rank() const { return rank_; }

    const std::vector<GroupElem>& generators() const { return generators_; }

    GroupElem identity() const;
    GroupElem multiply(const GroupElem& g, const GroupElem& h) const;
    GroupElem inverse(const GroupElem& g) const;
    bool contains(const GroupElem& g) const;

    // Applies a word of signed 1-based generator indices to the identity.
    GroupElem word(const std::vector<int>& letters) const;

    // BFS distance from the identity in the Cayley graph of S u S^-1.
    // FreeAbelian with non-standard generators memoizes BFS up to radius_cap
    // and throws BudgetError beyond.
    long long word_length(const GroupElem& g) const;

    std::vector<GroupElem> group_ball(long long radius) const;

    void set_radius_cap(long long cap) { radius_cap_ = cap; }
    long long radius_cap() const { return radius_cap_; }

    bool same_as(const GroupModel& other) const;

    std::string to_string(const GroupElem& g) const;

  private:
    GroupModel() = default;
    void build_length_table();  // finite kinds
    bool standard_free_abelian_gens() const;
    void ensure_bfs(long long radius) const;

    GroupKind kind_ = GroupKind::Trivial;
    long long order_ = 1;
    int rank_ = 0;
    std::vector<GroupElem> generators_;
    std::vector<std::vector<int>> mul_table_;  // FiniteTable
    int identity_index_ = 0;
    std::vector<long long> length_table_;  // finite kinds, indexed by element
    bool standard_gens_ = false;           // FreeAbelian closed form applies
    long long radius_cap_ = 64;

    // BFS memo for FreeAbelian with non-standard generators.
    struct BfsMemo {
        std::mutex mutex;
        std::map<GroupElem, long long> dist;
        long long explored_radius = -1;
        std::vector<GroupElem> frontier;
    };
    std::shared_ptr<BfsMemo> memo_ = std::make_shared<BfsMemo>();
};

}  // namespace fillvol

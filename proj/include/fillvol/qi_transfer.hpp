#pragma once

#include "fillvol/filling.hpp"

namespace fillvol {

// A (K,K)-quasi-isometry f with quasi-inverse h, given as element tables.
struct QuasiIsometryData {
    const GroupModel* source = nullptr;
    const GroupModel* target = nullptr;
    long long K = 1;
    std::map<GroupElem, GroupElem> f;
    std::map<GroupElem, GroupElem> h;
};

// f = h = identity on the shared element set (same group, two generating
// sets); finite groups only.
QuasiIsometryData identity_qi(const GroupModel& source, const GroupModel& target, long long K);

QuasiIsometryData inverse_qi(const QuasiIsometryData& qi);

// Checks the (K,K)-inequalities on all table pairs and K-closeness of h∘f.
void verify_qi(const QuasiIsometryData& qi);

// A chain map f_i: L^from_i -> L^to_i through degree top_degree, with the
// proof-formula norm constants and the observed per-cell maxima.
struct PartialChainMap {
    const FreeComplex* from = nullptr;
    const FreeComplex* to = nullptr;
    int top_degree = 0;
    std::vector<std::map<Cell, Chain>> images;  // per degree, per region cell
    std::vector<Rat> D, D_weighted;             // formula constants
    std::vector<Rat> observed, observed_weighted;

    Chain apply(int degree, const Chain& x) const;  // R-linear extension
};

// A chain homotopy s_i: L_i -> L_{i+1} with dd s + s dd = id - h∘f through
// degree top_degree (= n-1).
struct PartialHomotopy {
    const FreeComplex* cx = nullptr;
    int top_degree = 0;
    std::vector<std::map<Cell, Chain>> images;
    std::vector<Rat> E, E_weighted, F;
    std::vector<Rat> observed, observed_weighted;

    Chain apply(int degree, const Chain& x) const;
};

// f_0 = linear extension of f, f_1 = lex-least BFS paths, higher degrees by
// bounded filling. Verifies the chain-map identity and both norm bounds on
// every cell. Requires Cayley-shaped degrees 0-1 on both complexes and
// finite groups.
PartialChainMap build_chain_map(const QuasiIsometryData& qi, const FreeComplex& LG,
                                const FreeComplex& LH, int n, SolverBudget budget = {});

PartialHomotopy build_homotopy(const QuasiIsometryData& qi, const PartialChainMap& f_map,
                               const PartialChainMap& h_map, const FreeComplex& LG, int n,
                               SolverBudget budget = {});

// Fills z in L^G through the target: returns h_n(b) + s_{n-1}(z) where b is
// a minimal filling of f_{n-1}(z); checks the transfer bound.
FillingResult qi_transfer_filling(const QuasiIsometryData& qi, const PartialChainMap& f_map,
                                  const PartialChainMap& h_map, const PartialHomotopy& s,
                                  const Chain& z, SolverBudget budget = {});

}  // namespace fillvol

#pragma once

#include "fillvol/chain_complex.hpp"

#include <set>

namespace fillvol {

// Gr(U): vertices are degree-i cells, edges join cells whose boundaries
// share a basis cell. Degree-0 graphs are edgeless.
struct SupportGraph {
    int degree = 0;
    std::vector<Cell> vertices;                // sorted, unique
    std::vector<std::pair<int, int>> edges;    // index pairs i < j, sorted
};

enum class GraphClass { Edgeless, Cycle, Complete, Other };

struct GraphSummary {
    size_t vertex_count = 0;
    size_t edge_count = 0;
    bool regular = false;
    size_t regularity = 0;  // common degree when regular
    GraphClass cls = GraphClass::Other;
};

// Per-degree geometric data: A_i = union of supp_Gamma(d b) over basis b,
// K_i = max word length over A_i (0 when empty, and K_0 := 0).
struct GeometricConstants {
    int degree = 0;
    std::set<GroupElem> A;
    long long K = 0;
};

std::vector<Cell> supp_R(const Chain& c);
std::vector<GroupElem> supp_Gamma(const Chain& c);

SupportGraph build_gr(const FreeComplex& cx, int degree, const std::vector<Cell>& cells);
GraphSummary summarize_graph(const SupportGraph& g);

// Deterministic decomposition of c along the components of Gr(supp_R(c)),
// ordered by minimal cell. Norms add; cycle components are cycles.
std::vector<Chain> connected_components(const FreeComplex& cx, const Chain& c);

GeometricConstants constants(const FreeComplex& cx, int degree);

// S(u) = {v in Gamma B_{i+1} : u in supp_R(d v)}, exact via inverting each
// boundary term: the only candidate translate for (h, b) is u.g * h^-1.
// Top-degree cells yield the empty set.
std::vector<Cell> neighbor_cells_above(const FreeComplex& cx, int degree, const Cell& u);

// Neighbors of u in Gr(Gamma B_degree) = union of S(w) over w in supp_R(d u).
std::vector<Cell> gr_neighbors(const FreeComplex& cx, int degree, const Cell& u);

// All cells within Gr-distance <= radius of the seed set.
std::set<Cell> gr_ball(const FreeComplex& cx, int degree, const std::set<Cell>& seeds,
                       long long radius);

}  // namespace fillvol

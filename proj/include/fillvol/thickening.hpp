#pragma once

#include "fillvol/support_geometry.hpp"

namespace fillvol {

// A per-degree choice of cell subsets U_i of Gamma B_i.
struct BasisCollection {
    std::vector<std::set<Cell>> levels;  // index = degree; may be shorter than the complex

    const std::set<Cell>& at(int degree) const;
    std::set<Cell>& mutable_at(int degree);
    void insert(int degree, const Cell& cell);
    bool contains(int degree, const Cell& cell) const;

    int dimension() const;  // highest nonempty degree, -1 when empty
    size_t total_cells() const;
    std::vector<size_t> counts() const;  // cells per degree, trimmed

    bool operator==(const BasisCollection& other) const;
};

bool is_closed_under_differentials(const FreeComplex& cx, const BasisCollection& U);

// Smallest differential-closed collection containing U (top-down closure P).
BasisCollection close_P(const FreeComplex& cx, BasisCollection U);

// N~_i(U) = U_i united with S(u) for u in U_{i-1}; degree 0 unchanged.
BasisCollection tilde_N(const FreeComplex& cx, const BasisCollection& U);

// Truncation to degrees <= k.
BasisCollection truncate(const BasisCollection& U, int k);

// The j-step k-thickening N^{k,j}(U): j=0 is close_P; each further step is
// close_P of the k-truncated N~ of the previous collection.
BasisCollection thicken(const FreeComplex& cx, const BasisCollection& U, int k, int j);

// Connectivity-filtration hypotheses. Conditions (2) and (4) are checked
// orbit-exactly; (3) exhaustively for finite groups, else on a ball with an
// orbit certificate when it applies.
struct ExhaustionReport {
    bool nonzero_boundaries = false;       // (2): db != 0 for basis b, degrees 1..k
    std::vector<std::string> zero_cells;   // offenders for (2)
    std::string connectivity = "unverified";  // (3): pass | fail |
                                              // proved by orbit certificate |
                                              // verified on ball | unverified
    bool vertices_covered = false;         // (4): union supp_R(db) = Gamma B_0
    long long ball_radius = 0;

    bool all_pass() const {
        return nonzero_boundaries && vertices_covered &&
               (connectivity == "pass" || connectivity == "proved by orbit certificate");
    }
};

ExhaustionReport exhaustion_conditions(const FreeComplex& cx, int k, long long ball_radius = -1);

// One canonical representative per Gamma-orbit of connected subsets of
// Gamma B_i with at most l cells; the empty set is always first.
std::vector<std::set<Cell>> orbit_representatives(const FreeComplex& cx, int degree, long long l);

// Lexicographically least translate of U among those moving a member cell
// to the identity.
std::set<Cell> canonical_orbit_representative(const FreeComplex& cx, const std::set<Cell>& U);

}  // namespace fillvol

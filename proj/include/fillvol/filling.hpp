#pragma once

#include "fillvol/thickening.hpp"

#include <optional>

namespace fillvol {

struct SolverBudget {
    int j_cap = 20;                  // thickening step cap
    long long box_bound = -1;        // Z coefficient box (-1: derive)
    long long window_radius = -1;    // oracle Gr-window radius (-1: derive)
    unsigned long long enumeration_cap = 4000000;  // candidate-space cap
    Int denominator_lcm = 1;         // Q: search denominators dividing this
};

// A cycle to fill; the boundary condition is verified at construction.
struct FillingProblem {
    FillingProblem(const FreeComplex& complex, Chain cycle, bool weighted = false,
                   SolverBudget budget = {});

    const FreeComplex* cx;
    Chain cycle;
    bool weighted = false;
    SolverBudget budget;
};

struct FillingResult {
    bool found = false;
    Chain filling;
    Rat achieved_norm = 0;   // in the selected norm
    bool exact_minimum = false;
    std::string status;
    int steps = -1;          // thickening steps used, when applicable
    size_t search_space = 0;
    Rat certified_bound = 0; // a-priori bound when one was computed
};

// Independent constraint-propagation search over a cell window, no linear
// algebra. Exact minimum for finite groups (whole module); otherwise the
// minimum over the budgeted window, flagged as an upper bound.
FillingResult fill_bruteforce(const FillingProblem& p);

// Iterates j-step thickenings of supp_R(c) and solves the linear system in
// each finite-dimensional space; first solution wins (no minimization).
FillingResult fill_by_thickening(const FillingProblem& p, int j_cap = -1);

// Exact minimum-norm filling over a certified window (finite rings, Z, and
// Q with bounded denominators).
FillingResult filling_volume(const FillingProblem& p);

// Weighted filling function values for finite groups, from one exhaustive
// cycle enumeration: value_at(l) = sup{FV^Gamma(z) : ||z||^Gamma <= l}.
struct WeightedFvTable {
    int degree = 0;
    std::vector<std::pair<Rat, Rat>> cycles;  // (weighted cycle norm, weighted FV)

    Rat value_at(const Rat& l) const;
    Rat a_constant(const Rat& x, long long K_below) const;  // FV(x+2Kx^2)+1
};

WeightedFvTable weighted_fv_table(const FreeComplex& cx, int degree, SolverBudget budget = {});

// Component-wise filling: decompose, translate to the origin, fill, sum.
// Checks the weighted and plain norm bounds derived from the table before
// returning; certified_bound holds the weighted bound.
FillingResult bounded_filling(const FreeComplex& cx, const Chain& c, SolverBudget budget = {},
                              const WeightedFvTable* table = nullptr);

struct TableEntry {
    long long l = 0;
    Rat value = 0;
    std::string status;   // exact | upper bound | partial
    Rat combine_upper = 0;  // partition-combine estimate (always >= value)
};

struct FillingFunctionTable {
    int degree = 0;
    bool weighted = false;
    std::vector<TableEntry> entries;  // l = 0..l_max

    Rat value_at(long long l) const;
    long long max_l() const { return entries.empty() ? -1 : entries.back().l; }
};

enum class TableMode { Orbit, Oracle };

// mode Oracle: full cycle enumeration (finite groups).
// mode Orbit: orbit representatives of connected supports, realizable
// disjoint combinations, exact FV per combination; for infinite groups only
// the partition-combine upper bound is produced.
FillingFunctionTable filling_function_table(const FreeComplex& cx, int degree, long long l_max,
                                            TableMode mode, bool weighted = false,
                                            SolverBudget budget = {});

// Smallest lexicographic (C, D) in the grid with
// f(v) <= C g(Cv + D) + Cv + D on all shared sample points; finite-sample
// witness only.
std::optional<std::pair<long long, long long>> preccurlyeq_witness(const FillingFunctionTable& f,
                                                                   const FillingFunctionTable& g,
                                                                   long long C_max,
                                                                   long long D_max);

}  // namespace fillvol

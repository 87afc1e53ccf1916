#pragma once

#include "fillvol/ring.hpp"

#include <optional>
#include <vector>

namespace fillvol {

// Dense exact solvers at desk scale. Matrices are row-major.

using RatMatrix = std::vector<std::vector<Rat>>;
using IntMatrix = std::vector<std::vector<Int>>;

// Solve A x = b over a field given by `ring` (uses ring.inv).
// kernel holds a basis of {x : A x = 0}; particular is empty when the
// system is inconsistent.
struct FieldSolution {
    std::optional<std::vector<RElem>> particular;
    std::vector<std::vector<RElem>> kernel;
    size_t rank = 0;
};

FieldSolution solve_field(const Ring& ring, const std::vector<std::vector<RElem>>& A,
                          const std::vector<RElem>& b);

// Solve A x = b in integers. kernel is a lattice basis of the integer
// kernel (column-HNF based), so every integer solution is
// particular + integer combination of kernel vectors.
struct IntegerSolution {
    std::optional<std::vector<Int>> particular;
    std::vector<std::vector<Int>> kernel;
};

IntegerSolution solve_integer(const IntMatrix& A, const std::vector<Int>& b);

// New basis of the same lattice in echelon form: vector j is zero in every
// coordinate before its (strictly increasing) leading coordinate.
std::vector<std::vector<Int>> echelonize_lattice(const std::vector<std::vector<Int>>& basis);

}  // namespace fillvol

#pragma once

#include "fillvol/group_algebra.hpp"

#include <map>
#include <string>
#include <vector>

namespace fillvol {

// A cell gamma*b of the R-basis Gamma B_i. The degree lives on the chain;
// ordering is (basis index, canonical group form), the global tie-breaker.
struct Cell {
    int basis = 0;
    GroupElem g;

    auto operator<=>(const Cell&) const = default;
};

// A finitely supported homogeneous R-linear combination of cells.
struct Chain {
    int degree = 0;
    std::map<Cell, RElem> coeffs;

    bool is_zero() const { return coeffs.empty(); }
    size_t support_size() const { return coeffs.size(); }
};

// One boundary summand: coeff * (g * basis[target]). The generator word is
// kept for file round-trips; g is its resolved canonical form.
struct BoundaryTerm {
    std::vector<int> word;
    GroupElem g;
    int target = 0;
    RElem coeff;
};

// A non-negative free R[Gamma]-chain complex with chosen finite bases.
// Immutable after construction; d^2 = 0 is verified on every basis cell.
class FreeComplex {
  public:
    struct DegreeData {
        std::vector<std::string> basis_names;
        // boundary[b] lists the terms of d(basis cell b); empty in degree 0
        std::vector<std::vector<BoundaryTerm>> boundary;
    };

    FreeComplex(Ring ring, Norm norm, GroupModel group, std::vector<DegreeData> degrees);

    const Ring& ring() const { return ring_; }
    const Norm& norm() const { return norm_; }
    const GroupModel& group() const { return group_; }

    int max_degree() const { return static_cast<int>(degrees_.size()) - 1; }
    int rank(int degree) const;
    const DegreeData& degree_data(int degree) const;
    const std::string& basis_name(int degree, int basis) const;

    Chain make_chain(int degree, const std::vector<std::pair<Cell, RElem>>& terms) const;
    Chain zero_chain(int degree) const { return Chain{degree, {}}; }

    Chain add(const Chain& a, const Chain& b) const;
    Chain negate(const Chain& a) const;
    Chain sub(const Chain& a, const Chain& b) const { return add(a, negate(b)); }
    Chain scale(const RElem& r, const Chain& a) const;
    Chain translate(const GroupElem& gamma, const Chain& a) const;

    // R-linear Gamma-equivariant extension of the basis boundary table.
    Chain boundary(const Chain& c) const;
    Chain boundary_of_cell(int degree, const Cell& cell) const;

    Rat chain_norm(const Chain& c, bool weighted) const;

    // Throws ComplexError naming the offending cell if d(d(b)) != 0 anywhere.
    void verify_d_squared() const;

    std::string cell_to_string(int degree, const Cell& cell) const;
    std::string chain_to_string(const Chain& c) const;

  private:
    void validate() const;

    Ring ring_;
    Norm norm_;
    GroupModel group_;
    std::vector<DegreeData> degrees_;
};

// --- built-in complexes -------------------------------------------------

// ... -> RG --N--> RG --(1-t)--> RG -> R for Gamma = Z/k, N = sum t^i.
FreeComplex builtin_cyclic_resolution(long long k, int n_max, Ring ring, Norm norm);

// Degrees 0..1 of the Cayley graph of (group, generators).
FreeComplex builtin_cayley_complex(GroupModel group, Ring ring, Norm norm);

// Degrees 0..2: Cayley graph plus one 2-cell per relator word, with the
// path-traversal boundary. Relators must evaluate to the identity.
FreeComplex builtin_presentation_complex(GroupModel group, std::vector<std::vector<int>> relators,
                                         Ring ring, Norm norm);

// The universal cover of the presentation complex of Z^2 = <x,y | [x,y]>.
FreeComplex builtin_z2_presentation_complex(Ring ring, Norm norm);

// The 1-cycle tracing x^n y^n x^-n y^-n in the Z^2 presentation complex,
// scaled by r. With unit r the l1-norm is 4n.
Chain commutator_cycle(const FreeComplex& z2_complex, long long n, const RElem& r);
Chain commutator_cycle(const FreeComplex& z2_complex, long long n);

// --- file format --------------------------------------------------------

FreeComplex load_complex(const std::string& path);
void save_complex(const FreeComplex& complex, const std::string& path);
FreeComplex complex_from_json_text(const std::string& text);
std::string complex_to_json_text(const FreeComplex& complex);

}  // namespace fillvol

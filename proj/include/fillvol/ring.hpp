#pragma once

#include "fillvol/numeric.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace fillvol {

enum class RingKind { Integers, Rationals, Modular, PrimeField, Table };

// Addition/multiplication tables for a user-supplied finite ring.
// Limited to <= 64 elements; the full axiom set is verified at construction.
struct RingTables {
    std::vector<std::vector<int>> add;
    std::vector<std::vector<int>> mul;
    int zero = 0;
    int one = 1;
};

// Ring elements are exact rationals. For Modular/PrimeField/Table kinds the
// value is the integer residue/index in [0, size).
using RElem = Rat;

class Ring {
  public:
    static Ring integers();
    static Ring rationals();
    static Ring modular(long m);       // Z/m, m >= 2
    static Ring prime_field(long p);   // F_p
    static Ring table(RingTables t);

    RingKind kind() const { return kind_; }
    // Number of elements, 0 for infinite rings.
    long size() const { return size_; }
    long modulus() const { return size_; }
    bool finite() const { return size_ != 0; }
    bool is_field() const;

    RElem zero() const { return RElem(0); }
    RElem one() const;
    RElem from_int(const Int& n) const;

    bool contains(const RElem& x) const;

    RElem add(const RElem& a, const RElem& b) const;
    RElem neg(const RElem& a) const;
    RElem sub(const RElem& a, const RElem& b) const { return add(a, neg(b)); }
    RElem mul(const RElem& a, const RElem& b) const;
    // Multiplicative inverse; only for fields (and units of Table rings).
    RElem inv(const RElem& a) const;
    bool is_zero(const RElem& a) const { return a == 0; }

    // All elements; throws UnsupportedError for infinite rings.
    std::vector<RElem> elements() const;

    std::string to_string(const RElem& x) const;
    bool same_as(const Ring& other) const;

  private:
    Ring() = default;
    void check_element(const RElem& x) const;

    RingKind kind_ = RingKind::Integers;
    long size_ = 0;
    std::shared_ptr<const RingTables> tables_;
};

enum class NormKind { Absolute, Discrete, Scaled, Symmetrized, Table };

// A norm on a ring, built as a small expression tree.
struct Norm {
    NormKind kind = NormKind::Discrete;
    Rat factor = 1;                  // Scaled
    std::shared_ptr<const Norm> base;  // Scaled, Symmetrized
    std::vector<Rat> table;          // Table: value per element index

    static Norm absolute();
    static Norm discrete();
    static Norm scaled(Norm base, Rat factor);
    static Norm symmetrized(Norm base);
    static Norm from_table(std::vector<Rat> values);
};

// |x| as an exact rational.
Rat norm_value(const Ring& ring, const Norm& norm, const RElem& x);

// |x|' = |x| + |-x|; symmetric and sandwiched between |x| and (1+|-1|)|x|.
Norm symmetrize(const Norm& norm);

// Largest eps with |x| >= eps for all x != 0, or nullopt if none exists.
// Throws UnsupportedError when the answer has no closed form.
std::optional<Rat> separation(const Ring& ring, const Norm& norm);

// Scales the norm so that it becomes 1-separated.
Norm rescale_to_one_separated(const Ring& ring, const Norm& norm);

// The finite set {r : |r| <= l}; throws UnsupportedError if infinite.
std::vector<RElem> ring_ball(const Ring& ring, const Norm& norm, const Rat& l);

// Validates that the norm is compatible with the ring (Absolute only over
// Z/Q, Table length matches ring size, nonnegative values, |x|=0 iff x=0).
void validate_norm(const Ring& ring, const Norm& norm);

}  // namespace fillvol

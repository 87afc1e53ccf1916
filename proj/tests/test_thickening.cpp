#include "fillvol/thickening.hpp"

#include <doctest.h>

using namespace fillvol;

namespace {

bool subset_of(const BasisCollection& a, const BasisCollection& b) {
    for (int d = 0; d <= a.dimension(); ++d)
        for (const auto& cell : a.at(d))
            if (!b.contains(d, cell)) return false;
    return true;
}

}  // namespace

TEST_CASE("closure under differentials") {
    FreeComplex cx = builtin_cyclic_resolution(7, 3, Ring::prime_field(7), Norm::discrete());
    BasisCollection U;
    U.insert(2, Cell{0, cx.group().identity()});
    CHECK(!is_closed_under_differentials(cx, U));
    BasisCollection closed = close_P(cx, U);
    CHECK(is_closed_under_differentials(cx, closed));
    CHECK(subset_of(U, closed));
    // closing twice changes nothing
    CHECK(close_P(cx, closed) == closed);
    // d(b2) = N touches every degree-1 cell, whose boundaries cover degree 0
    CHECK(closed.at(1).size() == 7);
    CHECK(closed.at(0).size() == 7);
}

TEST_CASE("tilde_N leaves degree 0 alone and adds S(u)") {
    FreeComplex cx = builtin_z2_presentation_complex(Ring::integers(), Norm::absolute());
    BasisCollection U;
    U.insert(0, Cell{0, GroupElem{{0, 0}}});
    U.insert(1, Cell{0, GroupElem{{0, 0}}});
    BasisCollection N = tilde_N(cx, U);
    CHECK(N.at(0) == U.at(0));
    CHECK(N.at(1).size() > 1);   // edges above the origin vertex join in
    CHECK(N.at(2).size() == 2);  // the two squares over the x-edge
    CHECK(subset_of(U, N));
}

TEST_CASE("truncation") {
    FreeComplex cx = builtin_cyclic_resolution(3, 3, Ring::prime_field(3), Norm::discrete());
    BasisCollection U;
    for (int d = 0; d <= 3; ++d) U.insert(d, Cell{0, cx.group().identity()});
    BasisCollection t = truncate(U, 1);
    CHECK(t.dimension() == 1);
    CHECK(t.at(0) == U.at(0));
    CHECK(t.at(1) == U.at(1));
}

TEST_CASE("thickening is monotone in j and saturates on finite groups") {
    FreeComplex cx = builtin_cyclic_resolution(7, 3, Ring::prime_field(7), Norm::discrete());
    BasisCollection seed;
    seed.insert(1, Cell{0, cx.group().identity()});
    BasisCollection prev = thicken(cx, seed, 2, 0);
    bool saturated = false;
    for (int j = 1; j <= 20; ++j) {
        BasisCollection next = thicken(cx, seed, 2, j);
        CHECK(subset_of(prev, next));
        if (next == prev) {
            saturated = true;
            break;
        }
        prev = next;
    }
    CHECK(saturated);
    CHECK(prev.at(1).size() == 7);  // the whole degree eventually joins
}

TEST_CASE("exhaustion conditions hold for the cyclic resolution") {
    FreeComplex cx = builtin_cyclic_resolution(5, 3, Ring::prime_field(5), Norm::discrete());
    ExhaustionReport rep = exhaustion_conditions(cx, 2);
    CHECK(rep.nonzero_boundaries);
    CHECK(rep.vertices_covered);
    CHECK(rep.connectivity == "pass");
    CHECK(rep.all_pass());
}

TEST_CASE("exhaustion conditions certify the Z^2 complex by orbits") {
    FreeComplex cx = builtin_z2_presentation_complex(Ring::integers(), Norm::absolute());
    ExhaustionReport rep = exhaustion_conditions(cx, 2);
    CHECK(rep.nonzero_boundaries);
    CHECK(rep.vertices_covered);
    CHECK(rep.connectivity == "proved by orbit certificate");
    CHECK(rep.all_pass());
}

TEST_CASE("canonical orbit representatives are canonical") {
    FreeComplex cx = builtin_cyclic_resolution(7, 2, Ring::prime_field(7), Norm::discrete());
    std::set<Cell> U = {Cell{0, GroupElem{{2}}}, Cell{0, GroupElem{{3}}}};
    auto rep = canonical_orbit_representative(cx, U);
    CHECK(canonical_orbit_representative(cx, rep) == rep);
    // every translate has the same representative
    for (long long i = 0; i < 7; ++i) {
        std::set<Cell> moved;
        for (const auto& c : U)
            moved.insert(Cell{c.basis, cx.group().multiply(GroupElem{{i}}, c.g)});
        CHECK(canonical_orbit_representative(cx, moved) == rep);
    }
}

TEST_CASE("orbit representatives are distinct connected orbits") {
    FreeComplex cx = builtin_cyclic_resolution(7, 2, Ring::prime_field(7), Norm::discrete());
    auto reps = orbit_representatives(cx, 1, 2);
    REQUIRE(!reps.empty());
    CHECK(reps.front().empty());  // empty set first
    for (size_t i = 1; i < reps.size(); ++i) {
        CHECK(!reps[i].empty());
        CHECK(reps[i].size() <= 2);
        CHECK(canonical_orbit_representative(cx, reps[i]) == reps[i]);
        for (size_t j = i + 1; j < reps.size(); ++j) CHECK(reps[i] != reps[j]);
    }
    // degree 1 of the 7-cycle: the singleton and the adjacent pair
    CHECK(reps.size() == 3);
}

TEST_CASE("orbit representatives on the infinite complex") {
    FreeComplex cx = builtin_z2_presentation_complex(Ring::integers(), Norm::absolute());
    auto reps = orbit_representatives(cx, 2, 2);
    CHECK(reps.size() == 4);  // empty, single square, horizontal and vertical dominoes
    for (const auto& U : reps)
        CHECK(canonical_orbit_representative(cx, U) == U);
}

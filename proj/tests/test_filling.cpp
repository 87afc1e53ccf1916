#include "fillvol/filling.hpp"

#include "fillvol/errors.hpp"

#include <doctest.h>

#include <algorithm>

using namespace fillvol;

namespace {

Chain cyclic_chain(const FreeComplex& cx, int degree,
                   const std::vector<std::pair<long long, long long>>& terms) {
    std::vector<std::pair<Cell, RElem>> out;
    for (const auto& [power, coeff] : terms)
        out.emplace_back(Cell{0, GroupElem{{power}}}, RElem(coeff));
    return cx.make_chain(degree, out);
}

}  // namespace

TEST_CASE("filling problems reject non-cycles") {
    FreeComplex cx = builtin_cyclic_resolution(5, 3, Ring::prime_field(5), Norm::discrete());
    Chain not_cycle = cyclic_chain(cx, 1, {{0, 1}});
    CHECK_THROWS_AS(FillingProblem(cx, not_cycle), DomainError);
}

TEST_CASE("degree-1 cycles of the cyclic resolution fill with one cell") {
    // over F5 the only degree-1 cycles are multiples of N; d(b2) = N
    FreeComplex cx = builtin_cyclic_resolution(5, 3, Ring::prime_field(5), Norm::discrete());
    Chain z = cyclic_chain(cx, 1, {{0, 1}, {1, 1}, {2, 1}, {3, 1}, {4, 1}});
    FillingResult r = filling_volume(FillingProblem(cx, z));
    CHECK(r.found);
    CHECK(r.exact_minimum);
    CHECK(r.achieved_norm == 1);
    Chain back = cx.boundary(r.filling);
    CHECK(cx.sub(back, z).is_zero());
}

TEST_CASE("degree-2 filling volumes over F5") {
    FreeComplex cx = builtin_cyclic_resolution(5, 3, Ring::prime_field(5), Norm::discrete());
    // 1 - t = d(b3 at e): volume 1
    Chain za = cyclic_chain(cx, 2, {{0, 1}, {1, 4}});
    FillingResult ra = filling_volume(FillingProblem(cx, za));
    CHECK(ra.achieved_norm == 1);
    // 1 - t^2 = (1 - t)(1 + t): needs two cells
    Chain zb = cyclic_chain(cx, 2, {{0, 1}, {2, 4}});
    FillingResult rb = filling_volume(FillingProblem(cx, zb));
    CHECK(rb.achieved_norm == 2);
    CHECK(rb.exact_minimum);
    CHECK(cx.sub(cx.boundary(rb.filling), zb).is_zero());
}

TEST_CASE("brute force oracle agrees with the certified solver") {
    FreeComplex cx = builtin_cyclic_resolution(5, 3, Ring::prime_field(5), Norm::discrete());
    std::vector<Chain> cycles = {
        cyclic_chain(cx, 2, {{0, 1}, {1, 4}}),
        cyclic_chain(cx, 2, {{0, 1}, {2, 4}}),
        cyclic_chain(cx, 2, {{0, 2}, {1, 1}, {3, 2}}),
        cyclic_chain(cx, 2, {{0, 1}, {1, 1}, {2, 1}, {3, 1}, {4, 1}}),
    };
    for (const auto& z : cycles) {
        if (!cx.boundary(z).is_zero()) continue;  // keep only genuine cycles
        FillingResult oracle = fill_bruteforce(FillingProblem(cx, z));
        FillingResult exact = filling_volume(FillingProblem(cx, z));
        CHECK(oracle.found == exact.found);
        if (oracle.found) CHECK(oracle.achieved_norm == exact.achieved_norm);
    }
}

TEST_CASE("commutator cycles fill with n^2 squares over Z") {
    FreeComplex cx = builtin_z2_presentation_complex(Ring::integers(), Norm::absolute());
    for (long long n = 1; n <= 2; ++n) {
        Chain z = commutator_cycle(cx, n);
        FillingResult r = filling_volume(FillingProblem(cx, z));
        CHECK(r.found);
        CHECK(r.exact_minimum);
        CHECK(r.achieved_norm == n * n);
        CHECK(cx.sub(cx.boundary(r.filling), z).is_zero());
    }
}

TEST_CASE("rational scaling trades norm for volume") {
    FreeComplex cx = builtin_z2_presentation_complex(Ring::rationals(), Norm::absolute());
    long long n = 2;
    Chain alpha = commutator_cycle(cx, n, Rat(1, n));
    CHECK(cx.chain_norm(alpha, false) == 4);
    SolverBudget budget;
    budget.denominator_lcm = n;
    FillingResult r = filling_volume(FillingProblem(cx, alpha, false, budget));
    CHECK(r.found);
    CHECK(r.achieved_norm == n);
}

TEST_CASE("thickening solver finds fillings, never beating the minimum") {
    FreeComplex cx = builtin_cyclic_resolution(7, 3, Ring::prime_field(7), Norm::discrete());
    Chain z = cyclic_chain(cx, 2, {{0, 1}, {3, 6}});
    FillingResult thick = fill_by_thickening(FillingProblem(cx, z));
    REQUIRE(thick.found);
    CHECK(thick.steps >= 0);
    CHECK(cx.sub(cx.boundary(thick.filling), z).is_zero());
    FillingResult exact = filling_volume(FillingProblem(cx, z));
    CHECK(thick.achieved_norm >= exact.achieved_norm);
}

TEST_CASE("weighted filling value table") {
    FreeComplex cx = builtin_cyclic_resolution(3, 3, Ring::prime_field(3), Norm::discrete());
    WeightedFvTable table = weighted_fv_table(cx, 2);
    CHECK(table.value_at(0) == 0);
    CHECK(table.value_at(100) >= table.value_at(1));
    // monotone by construction
    for (long long l = 1; l <= 8; ++l) CHECK(table.value_at(Rat(l)) >= table.value_at(Rat(l - 1)));
    CHECK(table.a_constant(Rat(2), 1) == table.value_at(Rat(2 + 2 * 1 * 4)) + 1);
}

TEST_CASE("bounded filling splits into components") {
    FreeComplex cx = builtin_cyclic_resolution(3, 3, Ring::prime_field(3), Norm::discrete());
    Chain z = cyclic_chain(cx, 2, {{0, 1}, {1, 2}});
    WeightedFvTable table = weighted_fv_table(cx, 3);
    FillingResult r = bounded_filling(cx, z, {}, &table);
    CHECK(r.found);
    CHECK(cx.sub(cx.boundary(r.filling), z).is_zero());
    CHECK(r.certified_bound >= cx.chain_norm(r.filling, true));
}

TEST_CASE("orbit tables match the oracle on small cyclic groups") {
    for (long long k : {2, 3, 4}) {
        FreeComplex cx = builtin_cyclic_resolution(k, 3, Ring::prime_field(2), Norm::discrete());
        int degree = k == 3 ? 3 : 2;  // exercise both cycle degrees
        FillingFunctionTable orbit = filling_function_table(cx, degree, 4, TableMode::Orbit);
        FillingFunctionTable oracle = filling_function_table(cx, degree, 4, TableMode::Oracle);
        REQUIRE(orbit.entries.size() == oracle.entries.size());
        for (size_t i = 0; i < orbit.entries.size(); ++i) {
            CHECK(orbit.entries[i].value == oracle.entries[i].value);
            CHECK(orbit.entries[i].combine_upper >= orbit.entries[i].value);
        }
        for (long long l = 1; l <= 4; ++l) CHECK(orbit.value_at(l) >= orbit.value_at(l - 1));
    }
}

TEST_CASE("polynomial-equivalence witness on identical tables") {
    FreeComplex cx = builtin_cyclic_resolution(3, 3, Ring::prime_field(3), Norm::discrete());
    FillingFunctionTable t = filling_function_table(cx, 2, 4, TableMode::Oracle);
    auto w = preccurlyeq_witness(t, t, 4, 4);
    REQUIRE(w.has_value());
    auto [C, D] = *w;
    for (long long v = 0; v <= t.max_l(); ++v) {
        Rat rhs = Rat(C) * t.value_at(std::min(C * v + D, t.max_l())) + C * v + D;
        CHECK(t.value_at(v) <= rhs);
    }
}

// Acceptance gate: ten end-to-end checks, one line of output each.
#include "fillvol/qi_transfer.hpp"
#include "fillvol/linalg.hpp"

#include <algorithm>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <vector>

using namespace fillvol;

namespace {

std::vector<Cell> whole_degree(const FreeComplex& cx, int degree) {
    std::vector<Cell> cells;
    for (const auto& g : cx.group().group_ball(cx.group().order()))
        for (int b = 0; b < cx.rank(degree); ++b) cells.push_back(Cell{b, g});
    std::sort(cells.begin(), cells.end());
    return cells;
}

Ring ring_for_modulus(long long k) {
    for (long long d = 2; d * d <= k; ++d)
        if (k % d == 0) return Ring::modular(k);
    return Ring::prime_field(k);
}

// ---- 1: support-graph trichotomy of the cyclic resolutions ----------------

bool figure_one() {
    for (long long k : {3, 4, 5, 7}) {
        FreeComplex cx = builtin_cyclic_resolution(k, 4, ring_for_modulus(k), Norm::discrete());
        size_t complete_edges = static_cast<size_t>(k * (k - 1) / 2);
        for (int d = 0; d <= 4; ++d) {
            GraphSummary s = summarize_graph(build_gr(cx, d, whole_degree(cx, d)));
            if (s.vertex_count != static_cast<size_t>(k)) return false;
            if (d == 0) {
                if (s.cls != GraphClass::Edgeless || s.edge_count != 0) return false;
            } else if (d % 2 == 1) {
                // boundary 1 - t: the k-cycle (complete for k = 3)
                if (s.edge_count != static_cast<size_t>(k)) return false;
                if (!s.regular || s.regularity != 2) return false;
                if (s.cls != GraphClass::Cycle && !(k == 3 && s.cls == GraphClass::Complete))
                    return false;
            } else {
                // boundary N: every pair of vertices shares support (for
                // k = 3 the complete graph is also the 3-cycle)
                if (s.edge_count != complete_edges) return false;
                if (s.cls != GraphClass::Complete && !(k == 3 && s.cls == GraphClass::Cycle))
                    return false;
            }
        }
    }
    return true;
}

// ---- 2: d^2 = 0 everywhere; corrupted input rejected ----------------------

bool boundary_squared() {
    std::vector<FreeComplex> builtins;
    for (long long k : {2, 3, 5, 7})
        builtins.push_back(builtin_cyclic_resolution(k, 4, ring_for_modulus(k), Norm::discrete()));
    builtins.push_back(builtin_z2_presentation_complex(Ring::integers(), Norm::absolute()));
    builtins.push_back(builtin_cayley_complex(GroupModel::cyclic(7, {}), Ring::integers(),
                                              Norm::absolute()));
    builtins.push_back(builtin_presentation_complex(
        GroupModel::cyclic(6, {GroupElem{{2}}, GroupElem{{3}}}), {{1, 1, 1}, {2, 2}, {1, 2, -1, -2}},
        Ring::integers(), Norm::absolute()));
    for (const auto& cx : builtins) {
        cx.verify_d_squared();
        // round trip through the file format re-runs the verification
        FreeComplex back = complex_from_json_text(complex_to_json_text(cx));
        back.verify_d_squared();
    }

    // corrupt one coefficient: 1 - t becomes 1 - 2t, so d(b2) != 0
    std::string text =
        complex_to_json_text(builtin_cyclic_resolution(3, 2, Ring::integers(), Norm::absolute()));
    auto pos = text.find("-1");
    if (pos == std::string::npos) return false;
    text.replace(pos, 2, "-2");
    try {
        complex_from_json_text(text);
        return false;
    } catch (const ComplexError&) {
    }
    return true;
}

// ---- 3: norm axioms --------------------------------------------------------

bool norm_axioms_on(const Ring& ring, const Norm& norm,
                    const std::vector<std::pair<RElem, RElem>>& pairs) {
    for (const auto& [a, b] : pairs) {
        Rat na = norm_value(ring, norm, a);
        Rat nb = norm_value(ring, norm, b);
        if (na < 0 || (na == 0) != ring.is_zero(a)) return false;
        if (norm_value(ring, norm, ring.add(a, b)) > na + nb) return false;
        if (norm_value(ring, norm, ring.mul(a, b)) > na * nb) return false;
    }
    return true;
}

bool norm_axioms() {
    // exhaustive on finite rings up to 64 elements
    std::vector<Ring> finite;
    for (long m = 2; m <= 16; ++m) finite.push_back(Ring::modular(m));
    finite.push_back(Ring::modular(64));
    RingTables t;
    t.add.assign(4, std::vector<int>(4));
    t.mul.assign(4, std::vector<int>(4));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            t.add[i][j] = (i + j) % 4;
            t.mul[i][j] = (i * j) % 4;
        }
    finite.push_back(Ring::table(t));
    for (const auto& ring : finite) {
        auto elems = ring.elements();
        std::vector<std::pair<RElem, RElem>> pairs;
        for (const auto& a : elems)
            for (const auto& b : elems) pairs.emplace_back(a, b);
        Norm norm = Norm::discrete();
        if (!norm_axioms_on(ring, norm, pairs)) return false;
        // symmetrize sandwich |x| <= |x|' <= (1 + |-1|) |x|, exhaustive
        Norm sym = symmetrize(norm);
        Rat c = 1 + norm_value(ring, norm, ring.neg(ring.one()));
        for (const auto& x : elems) {
            Rat base = norm_value(ring, norm, x);
            Rat s = norm_value(ring, sym, x);
            if (s < base || s > c * base) return false;
            if (s != norm_value(ring, sym, ring.neg(x))) return false;
        }
    }

    // 10^3 random pairs over Z and Q with the absolute value
    std::mt19937_64 rng(2026);
    std::uniform_int_distribution<long long> num(-100000, 100000);
    std::uniform_int_distribution<long long> den(1, 500);
    std::vector<std::pair<RElem, RElem>> zs, qs;
    for (int i = 0; i < 1000; ++i) {
        zs.emplace_back(RElem(num(rng)), RElem(num(rng)));
        qs.emplace_back(Rat(num(rng), den(rng)), Rat(num(rng), den(rng)));
    }
    return norm_axioms_on(Ring::integers(), Norm::absolute(), zs) &&
           norm_axioms_on(Ring::rationals(), Norm::absolute(), qs);
}

// ---- 4: support-geometry estimates ----------------------------------------

bool check_cell_estimates(const FreeComplex& cx, int degree, const std::vector<Cell>& cells) {
    const GroupModel& g = cx.group();
    long long K = constants(cx, degree).K;
    auto len = [&](const Cell& c) { return g.word_length(c.g); };
    for (const auto& x : cells) {
        if (degree == 0) break;  // statement (i) is empty in degree 0
        for (const auto& v : supp_R(cx.boundary_of_cell(degree, x))) {
            if (len(x) > g.word_length(v.g) + K) return false;
            if (Rat(1 + len(x)) > Rat(1 + g.word_length(v.g)) + K) return false;
        }
    }
    SupportGraph gr = build_gr(cx, degree, cells);
    for (const auto& [i, j] : gr.edges) {
        long long lx = len(gr.vertices[static_cast<size_t>(i)]);
        long long ly = len(gr.vertices[static_cast<size_t>(j)]);
        if (ly > lx + 2 * K || lx > ly + 2 * K) return false;
    }
    return true;
}

bool check_corollary(const FreeComplex& cx, const Chain& c) {
    if (connected_components(cx, c).size() != 1) return true;  // only stated when connected
    long long K = constants(cx, c.degree).K;
    Rat plain = cx.chain_norm(c, false);
    Rat weighted = cx.chain_norm(c, true);
    for (const auto& [cell, coeff] : c.coeffs) {
        Rat wx = 1 + cx.group().word_length(cell.g);
        if (weighted > (wx + Rat(2 * K) * plain) * plain) return false;
    }
    return true;
}

bool support_estimates() {
    FreeComplex z7 = builtin_cyclic_resolution(7, 3, Ring::prime_field(7), Norm::discrete());
    for (int d = 0; d <= 3; ++d)
        if (!check_cell_estimates(z7, d, whole_degree(z7, d))) return false;

    // 10^3 random connected chains in the Z^2 complex, radius-6 region
    FreeComplex z2 = builtin_z2_presentation_complex(Ring::integers(), Norm::absolute());
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> deg_pick(1, 2);
    std::uniform_int_distribution<long long> coeff_pick(-3, 3);
    std::uniform_int_distribution<size_t> pick_any(0, 1 << 20);
    for (int trial = 0; trial < 1000; ++trial) {
        int degree = deg_pick(rng);
        // grow a connected support by a random walk on Gr neighbours
        std::set<Cell> support;
        Cell cur{0, GroupElem{{0, 0}}};
        support.insert(cur);
        size_t target = 1 + pick_any(rng) % 6;
        while (support.size() < target) {
            auto nb = gr_neighbors(z2, degree, cur);
            std::vector<Cell> inside;
            for (const auto& v : nb)
                if (z2.group().word_length(v.g) <= 6) inside.push_back(v);
            if (inside.empty()) break;
            cur = inside[pick_any(rng) % inside.size()];
            support.insert(cur);
        }
        std::vector<std::pair<Cell, RElem>> terms;
        for (const auto& cell : support) {
            long long a = coeff_pick(rng);
            if (a == 0) a = 1;
            terms.emplace_back(cell, RElem(a));
        }
        Chain c = z2.make_chain(degree, terms);
        std::vector<Cell> cells(support.begin(), support.end());
        if (!check_cell_estimates(z2, degree, cells)) return false;
        if (!check_corollary(z2, c)) return false;
    }
    // corollary also on connected chains of the Z/7 resolution
    for (int d = 1; d <= 3; ++d) {
        for (const auto& seed : whole_degree(z7, d)) {
            std::set<Cell> ball = gr_ball(z7, d, {seed}, 1);
            std::vector<std::pair<Cell, RElem>> terms;
            for (const auto& cell : ball) terms.emplace_back(cell, RElem(1));
            if (!check_corollary(z7, z7.make_chain(d, terms))) return false;
        }
    }
    return true;
}

// ---- 5: commutator cycle volumes over Z and Q ------------------------------

bool commutator_numbers() {
    FreeComplex zz = builtin_z2_presentation_complex(Ring::integers(), Norm::absolute());
    for (long long n = 1; n <= 3; ++n) {
        Chain c = commutator_cycle(zz, n);
        if (zz.chain_norm(c, false) != 4 * n) return false;
        FillingResult exact = filling_volume(FillingProblem(zz, c));
        if (!exact.found || !exact.exact_minimum || exact.achieved_norm != n * n) return false;
        if (!zz.sub(zz.boundary(exact.filling), c).is_zero()) return false;
        SolverBudget oracle_budget;
        oracle_budget.box_bound = 1;
        oracle_budget.window_radius = 2 * n;
        FillingResult oracle = fill_bruteforce(FillingProblem(zz, c, false, oracle_budget));
        if (!oracle.found || oracle.achieved_norm != exact.achieved_norm) return false;
    }
    FreeComplex qq = builtin_z2_presentation_complex(Ring::rationals(), Norm::absolute());
    for (long long n = 1; n <= 3; ++n) {
        Chain alpha = commutator_cycle(qq, n, Rat(1, n));
        if (qq.chain_norm(alpha, false) != 4) return false;
        SolverBudget budget;
        budget.denominator_lcm = n;
        FillingResult r = filling_volume(FillingProblem(qq, alpha, false, budget));
        if (!r.found || r.achieved_norm != n) return false;
        if (!qq.sub(qq.boundary(r.filling), alpha).is_zero()) return false;
    }
    return true;
}

// ---- 6: orbit tables equal the oracle tables -------------------------------

bool discrete_tables() {
    for (long long k : {2, 3, 4, 5}) {
        FreeComplex cx = builtin_cyclic_resolution(k, 3, Ring::prime_field(2), Norm::discrete());
        FillingFunctionTable orbit = filling_function_table(cx, 2, 6, TableMode::Orbit);
        FillingFunctionTable oracle = filling_function_table(cx, 2, 6, TableMode::Oracle);
        if (orbit.entries.size() != oracle.entries.size()) return false;
        for (size_t i = 0; i < orbit.entries.size(); ++i) {
            if (orbit.entries[i].l != oracle.entries[i].l) return false;
            if (orbit.entries[i].value != oracle.entries[i].value) return false;
            if (orbit.entries[i].status != "exact") return false;
        }
    }
    return true;
}

// ---- 7: thickening saturation and solver soundness -------------------------

bool thickening_checks() {
    FreeComplex cx = builtin_cyclic_resolution(7, 3, Ring::prime_field(7), Norm::discrete());
    // every single-cell seed in degrees 0..2 saturates at the full 2-skeleton
    for (int d = 0; d <= 2; ++d) {
        for (const auto& seed_cell : whole_degree(cx, d)) {
            BasisCollection seed;
            seed.insert(d, seed_cell);
            BasisCollection prev = thicken(cx, seed, 2, 0);
            bool saturated = false;
            for (int j = 1; j <= 20 && !saturated; ++j) {
                BasisCollection next = thicken(cx, seed, 2, j);
                for (int i = 0; i <= prev.dimension(); ++i)
                    for (const auto& cell : prev.at(i))
                        if (!next.contains(i, cell)) return false;  // not monotone
                saturated = next == prev;
                prev = next;
            }
            if (!saturated) return false;
            for (int i = 0; i <= 2; ++i)
                if (prev.at(i).size() != 7) return false;  // full 2-skeleton
        }
    }
    // fill_by_thickening: boundary matches, norm dominates the exact volume
    std::vector<Chain> cycles;
    cycles.push_back(cx.make_chain(2, {{Cell{0, GroupElem{{0}}}, RElem(1)},
                                       {Cell{0, GroupElem{{3}}}, RElem(6)}}));
    cycles.push_back(cx.make_chain(2, {{Cell{0, GroupElem{{0}}}, RElem(2)},
                                       {Cell{0, GroupElem{{1}}}, RElem(2)},
                                       {Cell{0, GroupElem{{2}}}, RElem(3)}}));
    for (const auto& z : cycles) {
        FillingResult thick = fill_by_thickening(FillingProblem(cx, z));
        if (!thick.found) return false;
        if (!cx.sub(cx.boundary(thick.filling), z).is_zero()) return false;
        FillingResult exact = filling_volume(FillingProblem(cx, z));
        if (!exact.exact_minimum || thick.achieved_norm < exact.achieved_norm) return false;
    }
    return true;
}

// ---- 8: orbit count against a direct enumeration ---------------------------

bool orbit_count() {
    FreeComplex cx = builtin_cyclic_resolution(7, 3, Ring::prime_field(7), Norm::discrete());
    auto reps = orbit_representatives(cx, 1, 2);

    // authoritative brute force: every connected subset with <= 2 cells,
    // canonicalized by minimising over all 7 translations
    std::set<std::set<Cell>> classes;
    classes.insert(std::set<Cell>{});
    auto canonical = [&](std::set<Cell> U) {
        std::set<Cell> best;
        bool have = false;
        for (long long i = 0; i < 7; ++i) {
            std::set<Cell> moved;
            for (const auto& c : U)
                moved.insert(Cell{c.basis, cx.group().multiply(GroupElem{{i}}, c.g)});
            if (!have || moved < best) {
                best = moved;
                have = true;
            }
        }
        return best;
    };
    std::vector<Cell> cells = whole_degree(cx, 1);
    for (const auto& u : cells) {
        classes.insert(canonical({u}));
        for (const auto& v : cells) {
            if (!(u < v)) continue;
            auto nb = gr_neighbors(cx, 1, u);
            if (std::find(nb.begin(), nb.end(), v) == nb.end()) continue;
            classes.insert(canonical({u, v}));
        }
    }
    return reps.size() == classes.size() && reps.size() == 3;
}

// ---- 9: quasi-isometry transfer between generating sets of Z/6 -------------

struct QiSide {
    FreeComplex LG, LH;
    QuasiIsometryData qi, iq;
    PartialChainMap f, h;
    PartialHomotopy s;
};

bool qi_identities(const QiSide& side) {
    const FreeComplex& LG = side.LG;
    const FreeComplex& LH = side.LH;
    for (int deg = 1; deg <= 2; ++deg) {
        for (const auto& cell : whole_degree(LG, deg)) {
            Chain x = LG.make_chain(deg, {{cell, RElem(1)}});
            Chain lhs = LH.boundary(side.f.apply(deg, x));
            Chain rhs = side.f.apply(deg - 1, LG.boundary(x));
            if (!LH.sub(lhs, rhs).is_zero()) return false;
        }
    }
    for (int deg = 0; deg <= 1; ++deg) {
        for (const auto& cell : whole_degree(LG, deg)) {
            Chain x = LG.make_chain(deg, {{cell, RElem(1)}});
            Chain lhs = LG.boundary(side.s.apply(deg, x));
            if (deg > 0) lhs = LG.add(lhs, side.s.apply(deg - 1, LG.boundary(x)));
            Chain rhs = LG.sub(x, side.h.apply(deg, side.f.apply(deg, x)));
            if (!LG.sub(lhs, rhs).is_zero()) return false;
        }
    }
    for (int deg = 0; deg <= 2; ++deg) {
        if (side.f.observed[deg] > side.f.D[deg]) return false;
        if (side.f.observed_weighted[deg] > side.f.D_weighted[deg]) return false;
    }
    for (int deg = 0; deg <= 1; ++deg) {
        if (side.s.observed[deg] > side.s.E[deg]) return false;
        if (side.s.observed_weighted[deg] > side.s.E_weighted[deg]) return false;
    }
    return true;
}

std::vector<Chain> all_degree_one_cycles(const FreeComplex& cx) {
    // kernel of the boundary matrix over F2, fully enumerated
    std::vector<Cell> rows = whole_degree(cx, 0);
    std::vector<Cell> cols = whole_degree(cx, 1);
    std::vector<std::vector<RElem>> A(rows.size(), std::vector<RElem>(cols.size(), RElem(0)));
    for (size_t j = 0; j < cols.size(); ++j) {
        Chain d = cx.boundary_of_cell(1, cols[j]);
        for (const auto& [cell, coeff] : d.coeffs) {
            size_t i = static_cast<size_t>(
                std::lower_bound(rows.begin(), rows.end(), cell) - rows.begin());
            A[i][j] = coeff;
        }
    }
    FieldSolution sol = solve_field(cx.ring(), A, std::vector<RElem>(rows.size(), RElem(0)));
    std::vector<Chain> cycles;
    size_t dim = sol.kernel.size();
    for (size_t mask = 1; mask < (size_t{1} << dim); ++mask) {
        Chain z = cx.zero_chain(1);
        for (size_t b = 0; b < dim; ++b) {
            if (!(mask >> b & 1)) continue;
            std::vector<std::pair<Cell, RElem>> terms;
            for (size_t j = 0; j < cols.size(); ++j)
                if (!cx.ring().is_zero(sol.kernel[b][j])) terms.emplace_back(cols[j], sol.kernel[b][j]);
            z = cx.add(z, cx.make_chain(1, terms));
        }
        if (!z.is_zero()) cycles.push_back(z);
    }
    return cycles;
}

bool qi_transfer() {
    Ring f2 = Ring::prime_field(2);
    GroupModel single = GroupModel::cyclic(6, {GroupElem{{1}}});
    GroupModel doubled = GroupModel::cyclic(6, {GroupElem{{2}}, GroupElem{{3}}});
    FreeComplex LG =
        builtin_presentation_complex(single, {{1, 1, 1, 1, 1, 1}}, f2, Norm::discrete());
    FreeComplex LH = builtin_presentation_complex(
        doubled, {{1, 1, 1}, {2, 2}, {1, 2, -1, -2}}, f2, Norm::discrete());

    QuasiIsometryData qi = identity_qi(LG.group(), LH.group(), 2);
    verify_qi(qi);
    QuasiIsometryData iq = inverse_qi(qi);
    verify_qi(iq);

    QiSide forward{LG, LH, qi, iq, build_chain_map(qi, LG, LH, 2),
                   build_chain_map(iq, LH, LG, 2), {}};
    forward.s = build_homotopy(qi, forward.f, forward.h, LG, 2);
    QiSide backward{LH, LG, iq, qi, {}, {}, {}};
    backward.f = build_chain_map(iq, LH, LG, 2);
    backward.h = build_chain_map(qi, LG, LH, 2);
    backward.s = build_homotopy(iq, backward.f, backward.h, LH, 2);
    if (!qi_identities(forward) || !qi_identities(backward)) return false;

    // every degree-1 cycle of both complexes transfers to a genuine filling
    for (const Chain& z : all_degree_one_cycles(LG)) {
        FillingResult r = qi_transfer_filling(qi, forward.f, forward.h, forward.s, z);
        if (!r.found) return false;
        if (!LG.sub(LG.boundary(r.filling), z).is_zero()) return false;
        if (r.certified_bound < r.achieved_norm) return false;
    }
    for (const Chain& z : all_degree_one_cycles(LH)) {
        FillingResult r = qi_transfer_filling(iq, backward.f, backward.h, backward.s, z);
        if (!r.found) return false;
        if (!LH.sub(LH.boundary(r.filling), z).is_zero()) return false;
        if (r.certified_bound < r.achieved_norm) return false;
    }
    return true;
}

// ---- 10: polynomial-equivalence inequalities on the tables -----------------

bool polynomial_equivalence() {
    for (long long k : {2, 3, 4, 5}) {
        FreeComplex cx = builtin_cyclic_resolution(k, 3, Ring::prime_field(2), Norm::discrete());
        long long K_below = constants(cx, 1).K;  // A_2 = 2 K_1
        long long K_here = constants(cx, 2).K;   // B_2 = 3 K_2
        // full-range tables: beyond the largest cycle norm both functions
        // are constant, so value_at is the true filling function everywhere
        long long plain_max = 4 * k;
        FillingFunctionTable plain =
            filling_function_table(cx, 2, plain_max, TableMode::Oracle, false);
        FillingFunctionTable weighted =
            filling_function_table(cx, 2, plain_max * (1 + k), TableMode::Oracle, true);
        for (const auto& e : plain.entries) {
            long long x = e.l;
            Rat lhs = e.value;
            Rat rhs = Rat(x) * weighted.value_at(x + 2 * K_below * x * x) + 1;
            if (lhs > rhs) return false;
        }
        for (const auto& e : weighted.entries) {
            long long x = e.l;
            Rat f = plain.value_at(x) + 1;
            Rat rhs = Rat(3 * K_here) * f * f + Rat(x) * f;
            if (e.value > rhs) return false;
        }
    }
    return true;
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<bool()> run;
    };
    std::vector<Criterion> criteria = {
        {"support-graph trichotomy (k = 3, 4, 5, 7)", figure_one},
        {"d^2 = 0 and corrupted-input rejection", boundary_squared},
        {"norm axiom suite", norm_axioms},
        {"support-geometry estimates", support_estimates},
        {"commutator cycle volumes over Z and Q", commutator_numbers},
        {"orbit tables equal oracle tables (F2, Z/k)", discrete_tables},
        {"thickening saturation and solver soundness", thickening_checks},
        {"orbit count |C^1_2 / Gamma| = 3", orbit_count},
        {"quasi-isometry transfer on Z/6", qi_transfer},
        {"polynomial-equivalence inequalities", polynomial_equivalence},
    };
    int failures = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        bool ok = false;
        std::string note;
        try {
            ok = criteria[i].run();
        } catch (const std::exception& e) {
            note = std::string(" (") + e.what() + ")";
        }
        std::cout << "criterion " << (i + 1) << ": " << criteria[i].name << " ... "
                  << (ok ? "PASS" : "FAIL") << note << "\n";
        if (!ok) ++failures;
    }
    if (failures) std::cout << failures << " criteria failed\n";
    return failures ? 1 : 0;
}

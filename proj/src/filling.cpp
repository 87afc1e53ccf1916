#include "fillvol/filling.hpp"

#include "fillvol/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace fillvol {

namespace {

// Multiplier c with |x| = c * abs(x) when the norm is absolute-based.
std::optional<Rat> absolute_scale(const Norm& n) {
    switch (n.kind) {
        case NormKind::Absolute:
            return Rat(1);
        case NormKind::Scaled: {
            auto b = absolute_scale(*n.base);
            if (!b) return std::nullopt;
            return n.factor * *b;
        }
        case NormKind::Symmetrized: {
            auto b = absolute_scale(*n.base);
            if (!b) return std::nullopt;
            return Rat(2) * *b;
        }
        default:
            return std::nullopt;
    }
}

Rat coeff_cost(const FreeComplex& cx, const Cell& cell, const RElem& a, bool weighted) {
    Rat v = norm_value(cx.ring(), cx.norm(), a);
    if (weighted) v *= Rat(1 + cx.group().word_length(cell.g));
    return v;
}

std::vector<Cell> whole_module_cells(const FreeComplex& cx, int degree) {
    if (!cx.group().finite()) throw UnsupportedError("infinite group has no full cell list");
    std::vector<Cell> out;
    for (const auto& g : cx.group().group_ball(cx.group().order()))
        for (int b = 0; b < cx.rank(degree); ++b) out.push_back(Cell{b, g});
    std::sort(out.begin(), out.end());
    return out;
}

std::set<Cell> seed_window(const FreeComplex& cx, const Chain& c) {
    std::set<Cell> w0;
    for (const auto& [v, coeff] : c.coeffs)
        for (const auto& u : neighbor_cells_above(cx, c.degree, v)) w0.insert(u);
    return w0;
}

// The linear system d b = c restricted to the given unknowns; cells outside
// are implicitly zero.
struct LinearWindow {
    int degree = 0;
    std::vector<Cell> cells;
    std::vector<Cell> rows;
    std::vector<std::vector<std::pair<int, RElem>>> col_terms;  // per unknown
    std::vector<std::vector<int>> row_cols;
    std::vector<RElem> target;
};

LinearWindow build_linear_window(const FreeComplex& cx, int degree, std::vector<Cell> cells,
                                 const Chain& c) {
    LinearWindow w;
    w.degree = degree;
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    w.cells = std::move(cells);

    std::map<Cell, int> row_of;
    auto row_index = [&](const Cell& cell) {
        auto it = row_of.find(cell);
        if (it != row_of.end()) return it->second;
        int idx = static_cast<int>(w.rows.size());
        row_of.emplace(cell, idx);
        w.rows.push_back(cell);
        return idx;
    };
    for (const auto& [v, coeff] : c.coeffs) row_index(v);
    w.col_terms.resize(w.cells.size());
    for (size_t j = 0; j < w.cells.size(); ++j) {
        Chain d = cx.boundary_of_cell(degree, w.cells[j]);
        for (const auto& [rcell, coeff] : d.coeffs)
            w.col_terms[j].emplace_back(row_index(rcell), coeff);
    }
    w.row_cols.resize(w.rows.size());
    for (size_t j = 0; j < w.cells.size(); ++j)
        for (const auto& [r, coeff] : w.col_terms[j])
            w.row_cols[static_cast<size_t>(r)].push_back(static_cast<int>(j));
    w.target.assign(w.rows.size(), cx.ring().zero());
    for (const auto& [v, coeff] : c.coeffs) w.target[static_cast<size_t>(row_of.at(v))] = coeff;
    return w;
}

Chain chain_from_assignment(const FreeComplex& cx, const LinearWindow& w,
                            const std::vector<RElem>& x) {
    Chain b = cx.zero_chain(w.degree);
    for (size_t j = 0; j < w.cells.size(); ++j)
        if (!cx.ring().is_zero(x[j])) b.coeffs[w.cells[j]] = x[j];
    return b;
}

// Constraint-propagating search for a minimum-cost solution over explicit
// per-cell value domains. Complete unless the node cap is hit.
struct DfsOutcome {
    bool found = false;
    std::vector<RElem> best;
    Rat best_cost = 0;
    bool complete = true;
    unsigned long long nodes = 0;
};

DfsOutcome dfs_min_fill(const FreeComplex& cx, const LinearWindow& w,
                        const std::vector<RElem>& domain, bool weighted,
                        unsigned long long node_cap) {
    const Ring& ring = cx.ring();
    const size_t nc = w.cells.size();
    DfsOutcome out;

    // per-cell domains ordered by increasing cost, then value
    std::vector<std::vector<RElem>> domains(nc);
    for (size_t j = 0; j < nc; ++j) {
        domains[j] = domain;
        std::stable_sort(domains[j].begin(), domains[j].end(), [&](const RElem& a, const RElem& b) {
            Rat ca = coeff_cost(cx, w.cells[j], a, weighted);
            Rat cb = coeff_cost(cx, w.cells[j], b, weighted);
            return ca != cb ? ca < cb : a < b;
        });
    }

    std::vector<bool> assigned(nc, false);
    std::vector<RElem> value(nc, ring.zero());
    std::vector<RElem> resid = w.target;
    std::vector<int> remaining(w.rows.size());
    for (size_t r = 0; r < w.rows.size(); ++r)
        remaining[r] = static_cast<int>(w.row_cols[r].size());

    // rows with no unknowns must already be satisfied
    for (size_t r = 0; r < w.rows.size(); ++r)
        if (remaining[r] == 0 && !ring.is_zero(resid[r])) return out;

    size_t num_assigned = 0;
    Rat partial = 0;

    std::function<void()> rec = [&]() {
        if (++out.nodes > node_cap) {
            out.complete = false;
            return;
        }
        if (num_assigned == nc) {
            if (!out.found || partial < out.best_cost ||
                (partial == out.best_cost && value < out.best)) {
                out.found = true;
                out.best = value;
                out.best_cost = partial;
            }
            return;
        }
        // prefer a cell forced by a one-unknown row
        size_t pick = nc;
        for (size_t r = 0; r < w.rows.size() && pick == nc; ++r) {
            if (remaining[r] != 1) continue;
            for (int j : w.row_cols[r])
                if (!assigned[static_cast<size_t>(j)]) {
                    pick = static_cast<size_t>(j);
                    break;
                }
        }
        if (pick == nc)
            for (size_t j = 0; j < nc; ++j)
                if (!assigned[j]) {
                    pick = j;
                    break;
                }

        // constraints from rows where `pick` is the last unknown
        std::vector<std::pair<RElem, RElem>> musts;  // (coefficient, required value)
        for (const auto& [r, q] : w.col_terms[pick])
            if (remaining[static_cast<size_t>(r)] == 1)
                musts.emplace_back(q, resid[static_cast<size_t>(r)]);

        for (const RElem& a : domains[pick]) {
            Rat cost = coeff_cost(cx, w.cells[pick], a, weighted);
            // domains sorted by cost: nothing cheaper follows
            if (out.found && partial + cost > out.best_cost) break;
            bool ok = true;
            for (const auto& [q, need] : musts)
                if (ring.mul(q, a) != need) {
                    ok = false;
                    break;
                }
            if (!ok) continue;

            assigned[pick] = true;
            value[pick] = a;
            partial += cost;
            ++num_assigned;
            bool feasible = true;
            for (const auto& [r, q] : w.col_terms[pick]) {
                resid[static_cast<size_t>(r)] =
                    ring.sub(resid[static_cast<size_t>(r)], ring.mul(q, a));
                --remaining[static_cast<size_t>(r)];
                if (remaining[static_cast<size_t>(r)] == 0 &&
                    !ring.is_zero(resid[static_cast<size_t>(r)]))
                    feasible = false;
            }
            if (feasible) rec();
            for (const auto& [r, q] : w.col_terms[pick]) {
                resid[static_cast<size_t>(r)] =
                    ring.add(resid[static_cast<size_t>(r)], ring.mul(q, a));
                ++remaining[static_cast<size_t>(r)];
            }
            --num_assigned;
            partial -= cost;
            assigned[pick] = false;
            value[pick] = ring.zero();
            if (!out.complete) return;
        }
    };
    rec();
    return out;
}

std::vector<RElem> integer_domain(long long box) {
    std::vector<RElem> out;
    out.push_back(RElem(0));
    for (long long v = 1; v <= box; ++v) {
        out.push_back(RElem(v));
        out.push_back(RElem(-v));
    }
    return out;
}

std::vector<RElem> ring_domain(const FreeComplex& cx, long long box, const Int& denom) {
    const Ring& ring = cx.ring();
    if (ring.finite()) return ring.elements();
    if (ring.kind() == RingKind::Integers) return integer_domain(box);
    // rationals: numerators over the fixed denominator
    std::vector<RElem> out;
    Int lim = Int(box) * denom;
    out.push_back(RElem(0));
    for (Int p = 1; p <= lim; ++p) {
        out.push_back(Rat(p, denom));
        out.push_back(Rat(-p, denom));
    }
    return out;
}

FillingResult trivial_zero_result(const FreeComplex& cx, int degree) {
    FillingResult res;
    res.found = true;
    res.filling = cx.zero_chain(degree);
    res.achieved_norm = 0;
    res.exact_minimum = true;
    res.status = "exact minimum";
    return res;
}

void verify_filling(const FreeComplex& cx, const Chain& b, const Chain& c) {
    if (!cx.sub(cx.boundary(b), c).is_zero())
        throw Error("internal: candidate filling fails the boundary check");
}

}  // namespace

FillingProblem::FillingProblem(const FreeComplex& complex, Chain cyc, bool wtd, SolverBudget bud)
    : cx(&complex), cycle(std::move(cyc)), weighted(wtd), budget(std::move(bud)) {
    if (!complex.boundary(cycle).is_zero()) throw DomainError("filling problem input is not a cycle");
}

FillingResult fill_bruteforce(const FillingProblem& p) {
    const FreeComplex& cx = *p.cx;
    const Chain& c = p.cycle;
    int n = c.degree + 1;
    if (c.is_zero()) return trivial_zero_result(cx, n <= cx.max_degree() ? n : c.degree);
    if (n > cx.max_degree()) throw DomainError("no cells above the cycle degree");

    std::vector<Cell> cells;
    bool whole = cx.group().finite();
    if (whole) {
        cells = whole_module_cells(cx, n);
    } else {
        Rat l1 = cx.chain_norm(c, false);
        long long radius =
            p.budget.window_radius >= 0
                ? p.budget.window_radius
                : std::max<long long>(1, static_cast<long long>(rat_floor(l1)));
        std::set<Cell> ball = gr_ball(cx, n, seed_window(cx, c), radius);
        cells.assign(ball.begin(), ball.end());
    }

    long long box = p.budget.box_bound >= 0
                        ? p.budget.box_bound
                        : std::max<long long>(1, static_cast<long long>(
                                                     rat_floor(cx.chain_norm(c, false))));
    LinearWindow w = build_linear_window(cx, n, cells, c);
    std::vector<RElem> domain = ring_domain(cx, box, p.budget.denominator_lcm);
    DfsOutcome dfs = dfs_min_fill(cx, w, domain, p.weighted, p.budget.enumeration_cap);

    FillingResult res;
    res.search_space = w.cells.size();
    if (!dfs.found) {
        res.status = dfs.complete ? "not found in window" : "search budget exceeded";
        return res;
    }
    res.found = true;
    res.filling = chain_from_assignment(cx, w, dfs.best);
    verify_filling(cx, res.filling, c);
    res.achieved_norm = cx.chain_norm(res.filling, p.weighted);
    bool exact = whole && dfs.complete;
    if (exact && cx.ring().kind() == RingKind::Integers) {
        // the box certifies the minimum only if it covers every coefficient
        // a better filling could use
        auto scale = absolute_scale(cx.norm());
        exact = scale && Rat(box) * *scale >= res.achieved_norm;
    }
    if (exact && cx.ring().kind() == RingKind::Rationals) exact = false;
    res.exact_minimum = exact;
    res.status = exact ? "exact minimum" : "upper bound only";
    return res;
}

FillingResult fill_by_thickening(const FillingProblem& p, int j_cap) {
    const FreeComplex& cx = *p.cx;
    const Chain& c = p.cycle;
    int n = c.degree + 1;
    if (c.is_zero()) return trivial_zero_result(cx, n <= cx.max_degree() ? n : c.degree);
    if (n > cx.max_degree()) throw DomainError("no cells above the cycle degree");
    if (j_cap < 0) j_cap = p.budget.j_cap;

    BasisCollection seed;
    for (const auto& [v, coeff] : c.coeffs) seed.insert(c.degree, v);

    BasisCollection prev;
    for (int j = 0; j <= j_cap; ++j) {
        BasisCollection N = thicken(cx, seed, n, j);
        if (j > 0 && N == prev) {
            FillingResult res;
            res.status = "no filling in saturated thickening space";
            res.steps = j;
            return res;
        }
        prev = N;
        const auto& lvl = N.at(n);
        if (!lvl.empty()) {
            std::vector<Cell> cells(lvl.begin(), lvl.end());
            LinearWindow w = build_linear_window(cx, n, cells, c);
            std::optional<std::vector<RElem>> sol;
            if (cx.ring().is_field()) {
                std::vector<std::vector<RElem>> A(w.rows.size(),
                                                  std::vector<RElem>(w.cells.size(),
                                                                     cx.ring().zero()));
                for (size_t col = 0; col < w.cells.size(); ++col)
                    for (const auto& [r, q] : w.col_terms[col]) A[static_cast<size_t>(r)][col] = q;
                FieldSolution fs = solve_field(cx.ring(), A, w.target);
                if (fs.particular) sol = *fs.particular;
            } else if (cx.ring().kind() == RingKind::Integers) {
                IntMatrix A(w.rows.size(), std::vector<Int>(w.cells.size(), 0));
                for (size_t col = 0; col < w.cells.size(); ++col)
                    for (const auto& [r, q] : w.col_terms[col])
                        A[static_cast<size_t>(r)][col] = boost::multiprecision::numerator(q);
                std::vector<Int> b(w.rows.size());
                for (size_t r = 0; r < w.rows.size(); ++r)
                    b[r] = boost::multiprecision::numerator(w.target[r]);
                IntegerSolution is = solve_integer(A, b);
                if (is.particular) {
                    std::vector<RElem> x;
                    for (const auto& v : *is.particular) x.push_back(Rat(v));
                    sol = std::move(x);
                }
            } else {
                // finite non-field ring: complete search inside the space
                DfsOutcome dfs = dfs_min_fill(cx, w, cx.ring().elements(), p.weighted,
                                              p.budget.enumeration_cap);
                if (dfs.found) sol = dfs.best;
            }
            if (sol) {
                FillingResult res;
                res.found = true;
                res.filling = chain_from_assignment(cx, w, *sol);
                verify_filling(cx, res.filling, c);
                res.achieved_norm = cx.chain_norm(res.filling, p.weighted);
                res.status = "upper bound only";
                res.steps = j;
                res.search_space = w.cells.size();
                res.certified_bound = Rat(static_cast<long long>(w.cells.size()));
                return res;
            }
        }
    }
    FillingResult res;
    res.status = "thickening step cap reached without a solution (inconclusive)";
    res.steps = j_cap;
    return res;
}

namespace {

// Enumerate integer solutions particular + lattice combinations whose
// coefficients all lie in [-box, box]; returns the minimum-cost one.
struct IntEnumOutcome {
    bool found = false;
    std::vector<Int> best;
    Rat best_cost = 0;
};

IntEnumOutcome enumerate_integer_solutions(const FreeComplex& cx, const LinearWindow& w,
                                           const std::vector<Int>& particular,
                                           const std::vector<std::vector<Int>>& kernel,
                                           const Int& box, bool weighted) {
    IntEnumOutcome out;
    const size_t n = particular.size();
    auto cost_of = [&](const std::vector<Int>& x) {
        Rat total = 0;
        for (size_t i = 0; i < n; ++i)
            total += coeff_cost(cx, w.cells[i], Rat(x[i]), weighted);
        return total;
    };
    auto consider = [&](const std::vector<Int>& x) {
        Rat cval = cost_of(x);
        std::vector<RElem> as_rat(n);
        for (size_t i = 0; i < n; ++i) as_rat[i] = Rat(x[i]);
        if (!out.found || cval < out.best_cost) {
            out.found = true;
            out.best = x;
            out.best_cost = cval;
        } else if (cval == out.best_cost) {
            std::vector<RElem> cur(n);
            for (size_t i = 0; i < n; ++i) cur[i] = Rat(out.best[i]);
            if (as_rat < cur) out.best = x;
        }
    };
    if (kernel.empty()) {
        consider(particular);  // the solution is unique
        return out;
    }
    auto basis = echelonize_lattice(kernel);
    const size_t k = basis.size();
    std::vector<size_t> lead(k);
    for (size_t j = 0; j < k; ++j) {
        size_t l = 0;
        while (l < n && basis[j][l] == 0) ++l;
        lead[j] = l;
    }
    std::vector<Int> x = particular;
    std::function<void(size_t)> rec = [&](size_t j) {
        // coordinates below lead[j] are final; box-check them
        size_t lo = j == 0 ? 0 : lead[j - 1];
        size_t hi = j < k ? lead[j] : n;
        for (size_t i = lo; i < hi; ++i)
            if (abs(x[i]) > box) return;
        if (j == k) {
            consider(x);
            return;
        }
        const Int& piv = basis[j][lead[j]];
        // |x[lead] + piv * y| <= box gives the y-range
        Int base = x[lead[j]];
        Int lo_y = (-box - base) / piv;
        Int hi_y = (box - base) / piv;
        if (piv < 0) std::swap(lo_y, hi_y);
        lo_y -= 2;  // slack for truncated division
        hi_y += 2;
        for (Int y = lo_y; y <= hi_y; ++y) {
            if (abs(base + piv * y) > box) continue;
            for (size_t i = lead[j]; i < n; ++i) x[i] += y * basis[j][i];
            rec(j + 1);
            for (size_t i = lead[j]; i < n; ++i) x[i] -= y * basis[j][i];
        }
    };
    rec(0);
    return out;
}

}  // namespace

FillingResult filling_volume(const FillingProblem& p) {
    const FreeComplex& cx = *p.cx;
    const Ring& ring = cx.ring();
    const Chain& c = p.cycle;
    int n = c.degree + 1;
    if (c.is_zero()) return trivial_zero_result(cx, n <= cx.max_degree() ? n : c.degree);
    if (n > cx.max_degree()) throw DomainError("no cells above the cycle degree");

    // rationals with an absolute-based norm: bounded-denominator search on
    // the scaled integer problem
    if (ring.kind() == RingKind::Rationals && absolute_scale(cx.norm())) {
        Int d = p.budget.denominator_lcm;
        for (const auto& [v, coeff] : c.coeffs)
            d = boost::multiprecision::lcm(d, boost::multiprecision::denominator(coeff));
        // rebuild over Z with the same boundary tables
        std::vector<FreeComplex::DegreeData> degrees;
        for (int i = 0; i <= cx.max_degree(); ++i) degrees.push_back(cx.degree_data(i));
        FreeComplex icx(Ring::integers(), cx.norm(), cx.group(), std::move(degrees));
        Chain scaled = icx.zero_chain(c.degree);
        for (const auto& [v, coeff] : c.coeffs)
            scaled.coeffs[v] = Rat(boost::multiprecision::numerator(coeff * Rat(d)));
        FillingProblem ip(icx, scaled, p.weighted, p.budget);
        FillingResult ires = filling_volume(ip);
        if (!ires.found) return ires;
        FillingResult res;
        res.found = true;
        res.filling = cx.zero_chain(n);
        for (const auto& [v, coeff] : ires.filling.coeffs) res.filling.coeffs[v] = coeff / Rat(d);
        verify_filling(cx, res.filling, c);
        res.achieved_norm = cx.chain_norm(res.filling, p.weighted);
        res.exact_minimum = ires.exact_minimum;
        res.status = ires.exact_minimum
                         ? "exact minimum (denominators bounded by " + d.str() + ")"
                         : ires.status;
        res.steps = ires.steps;
        res.search_space = ires.search_space;
        return res;
    }

    auto eps_opt = separation(ring, cx.norm());
    if (!eps_opt || *eps_opt <= 0)
        throw UnsupportedError("filling_volume needs a separated norm (or Q-absolute)");
    Rat eps = *eps_opt;

    FillingResult upper = fill_by_thickening(p);
    if (!upper.found) return upper;
    Rat U = upper.achieved_norm;

    std::vector<Cell> cells;
    if (cx.group().finite()) {
        cells = whole_module_cells(cx, n);
    } else {
        long long B = static_cast<long long>(rat_floor(U / eps));
        std::set<Cell> ball = gr_ball(cx, n, seed_window(cx, c), B);
        cells.assign(ball.begin(), ball.end());
    }
    LinearWindow w = build_linear_window(cx, n, cells, c);

    FillingResult res;
    res.search_space = w.cells.size();
    res.steps = upper.steps;

    if (ring.kind() == RingKind::Integers) {
        auto scale = absolute_scale(cx.norm());
        IntMatrix A(w.rows.size(), std::vector<Int>(w.cells.size(), 0));
        for (size_t col = 0; col < w.cells.size(); ++col)
            for (const auto& [r, q] : w.col_terms[col])
                A[static_cast<size_t>(r)][col] = boost::multiprecision::numerator(q);
        std::vector<Int> b(w.rows.size());
        for (size_t r = 0; r < w.rows.size(); ++r)
            b[r] = boost::multiprecision::numerator(w.target[r]);
        IntegerSolution is = solve_integer(A, b);
        if (!is.particular) {
            res.status = "no filling in certified window";
            return res;
        }
        if (!is.kernel.empty() && !scale)
            throw UnsupportedError("integer minimization needs an absolute-based norm");
        Int box = is.kernel.empty() ? Int(0) : Int(rat_floor(U / *scale));
        IntEnumOutcome best =
            enumerate_integer_solutions(cx, w, *is.particular, is.kernel, box, p.weighted);
        if (!best.found) {
            res.status = "no filling in certified window";
            return res;
        }
        std::vector<RElem> x(best.best.size());
        for (size_t i = 0; i < x.size(); ++i) x[i] = Rat(best.best[i]);
        res.found = true;
        res.filling = chain_from_assignment(cx, w, x);
    } else if (ring.is_field() && ring.finite()) {
        std::vector<std::vector<RElem>> A(w.rows.size(),
                                          std::vector<RElem>(w.cells.size(), ring.zero()));
        for (size_t col = 0; col < w.cells.size(); ++col)
            for (const auto& [r, q] : w.col_terms[col]) A[static_cast<size_t>(r)][col] = q;
        FieldSolution fs = solve_field(ring, A, w.target);
        if (!fs.particular) {
            res.status = "no filling in certified window";
            return res;
        }
        const size_t k = fs.kernel.size();
        double space = std::pow(static_cast<double>(ring.size()), static_cast<double>(k));
        if (space > static_cast<double>(p.budget.enumeration_cap)) {
            DfsOutcome dfs =
                dfs_min_fill(cx, w, ring.elements(), p.weighted, p.budget.enumeration_cap);
            if (!dfs.found) {
                res.status = dfs.complete ? "no filling in certified window"
                                          : "search budget exceeded";
                return res;
            }
            res.found = true;
            res.filling = chain_from_assignment(cx, w, dfs.best);
            if (!dfs.complete) {
                verify_filling(cx, res.filling, c);
                res.achieved_norm = cx.chain_norm(res.filling, p.weighted);
                res.status = "upper bound only";
                return res;
            }
        } else {
            std::vector<RElem> elems = ring.elements();
            std::vector<RElem> x = *fs.particular;
            std::vector<RElem> bestx;
            Rat bestc = 0;
            bool found = false;
            std::function<void(size_t, std::vector<RElem>&)> rec = [&](size_t j,
                                                                       std::vector<RElem>& cur) {
                if (j == k) {
                    Rat cval = 0;
                    for (size_t i = 0; i < cur.size(); ++i)
                        cval += coeff_cost(cx, w.cells[i], cur[i], p.weighted);
                    if (!found || cval < bestc || (cval == bestc && cur < bestx)) {
                        found = true;
                        bestc = cval;
                        bestx = cur;
                    }
                    return;
                }
                for (const RElem& e : elems) {
                    std::vector<RElem> next = cur;
                    if (!ring.is_zero(e))
                        for (size_t i = 0; i < next.size(); ++i)
                            next[i] = ring.add(next[i], ring.mul(e, fs.kernel[j][i]));
                    rec(j + 1, next);
                }
            };
            rec(0, x);
            res.found = found;
            if (found) res.filling = chain_from_assignment(cx, w, bestx);
        }
    } else if (ring.finite()) {
        DfsOutcome dfs = dfs_min_fill(cx, w, ring.elements(), p.weighted, p.budget.enumeration_cap);
        if (!dfs.found) {
            res.status = dfs.complete ? "no filling in certified window" : "search budget exceeded";
            return res;
        }
        if (!dfs.complete) {
            res.found = true;
            res.filling = chain_from_assignment(cx, w, dfs.best);
            verify_filling(cx, res.filling, c);
            res.achieved_norm = cx.chain_norm(res.filling, p.weighted);
            res.status = "upper bound only";
            return res;
        }
        res.found = true;
        res.filling = chain_from_assignment(cx, w, dfs.best);
    } else {
        throw UnsupportedError("unsupported ring for exact filling volume");
    }

    verify_filling(cx, res.filling, c);
    res.achieved_norm = cx.chain_norm(res.filling, p.weighted);
    if (res.achieved_norm > U) throw Error("internal: exact solver exceeded its upper bound");
    res.exact_minimum = true;
    res.status = "exact minimum";
    res.certified_bound = U;
    return res;
}

Rat WeightedFvTable::value_at(const Rat& l) const {
    Rat best = 0;
    for (const auto& [norm, fv] : cycles)
        if (norm <= l && fv > best) best = fv;
    return best;
}

Rat WeightedFvTable::a_constant(const Rat& x, long long K_below) const {
    return value_at(x + Rat(2 * K_below) * x * x) + 1;
}

namespace {

// All cycles of the finite module in the given degree (finite rings only).
std::vector<Chain> enumerate_cycles(const FreeComplex& cx, int degree, const SolverBudget& budget) {
    const Ring& ring = cx.ring();
    if (!cx.group().finite()) throw UnsupportedError("cycle enumeration needs a finite group");
    if (!ring.finite()) throw UnsupportedError("cycle enumeration needs a finite ring");
    std::vector<Cell> cells = whole_module_cells(cx, degree);
    std::vector<Chain> out;
    if (ring.is_field()) {
        // kernel of the boundary matrix
        std::map<Cell, int> row_of;
        std::vector<std::vector<std::pair<int, RElem>>> cols(cells.size());
        int nrows = 0;
        for (size_t j = 0; j < cells.size(); ++j) {
            Chain d = cx.boundary_of_cell(degree, cells[j]);
            for (const auto& [rc, q] : d.coeffs) {
                auto it = row_of.find(rc);
                int r = it == row_of.end() ? (row_of[rc] = nrows++) : it->second;
                cols[j].emplace_back(r, q);
            }
        }
        std::vector<std::vector<RElem>> A(static_cast<size_t>(nrows),
                                          std::vector<RElem>(cells.size(), ring.zero()));
        for (size_t j = 0; j < cells.size(); ++j)
            for (const auto& [r, q] : cols[j]) A[static_cast<size_t>(r)][j] = q;
        std::vector<RElem> zero(static_cast<size_t>(nrows), ring.zero());
        FieldSolution fs = solve_field(ring, A, zero);
        const size_t k = fs.kernel.size();
        double space = std::pow(static_cast<double>(ring.size()), static_cast<double>(k));
        if (space > static_cast<double>(budget.enumeration_cap))
            throw BudgetError("cycle space too large to enumerate");
        std::vector<RElem> elems = ring.elements();
        std::vector<RElem> x(cells.size(), ring.zero());
        std::function<void(size_t, std::vector<RElem>&)> rec = [&](size_t j,
                                                                   std::vector<RElem>& cur) {
            if (j == k) {
                Chain z = cx.zero_chain(degree);
                for (size_t i = 0; i < cells.size(); ++i)
                    if (!ring.is_zero(cur[i])) z.coeffs[cells[i]] = cur[i];
                out.push_back(std::move(z));
                return;
            }
            for (const RElem& e : elems) {
                std::vector<RElem> next = cur;
                if (!ring.is_zero(e))
                    for (size_t i = 0; i < next.size(); ++i)
                        next[i] = ring.add(next[i], ring.mul(e, fs.kernel[j][i]));
                rec(j + 1, next);
            }
        };
        rec(0, x);
    } else {
        double space = std::pow(static_cast<double>(ring.size()),
                                static_cast<double>(cells.size()));
        if (space > static_cast<double>(budget.enumeration_cap))
            throw BudgetError("module too large to enumerate");
        std::vector<RElem> elems = ring.elements();
        std::vector<RElem> cur(cells.size(), ring.zero());
        std::function<void(size_t)> rec = [&](size_t j) {
            if (j == cells.size()) {
                Chain z = cx.zero_chain(degree);
                for (size_t i = 0; i < cells.size(); ++i)
                    if (!ring.is_zero(cur[i])) z.coeffs[cells[i]] = cur[i];
                if (cx.boundary(z).is_zero()) out.push_back(std::move(z));
                return;
            }
            for (const RElem& e : elems) {
                cur[j] = e;
                rec(j + 1);
            }
            cur[j] = ring.zero();
        };
        rec(0);
    }
    return out;
}

}  // namespace

WeightedFvTable weighted_fv_table(const FreeComplex& cx, int degree, SolverBudget budget) {
    if (degree < 1 || degree > cx.max_degree())
        throw DomainError("weighted_fv_table: degree out of range");
    WeightedFvTable table;
    table.degree = degree;
    for (const Chain& z : enumerate_cycles(cx, degree - 1, budget)) {
        if (z.is_zero()) continue;
        FillingProblem fp(cx, z, true, budget);
        FillingResult r = filling_volume(fp);
        if (!r.found || !r.exact_minimum)
            throw Error("weighted_fv_table: cycle without exact filling volume");
        table.cycles.emplace_back(cx.chain_norm(z, true), r.achieved_norm);
    }
    std::sort(table.cycles.begin(), table.cycles.end());
    return table;
}

FillingResult bounded_filling(const FreeComplex& cx, const Chain& c, SolverBudget budget,
                              const WeightedFvTable* table) {
    int n = c.degree + 1;
    if (!cx.boundary(c).is_zero()) throw DomainError("bounded_filling input is not a cycle");
    if (c.is_zero()) return trivial_zero_result(cx, n <= cx.max_degree() ? n : c.degree);
    if (n > cx.max_degree()) throw DomainError("no cells above the cycle degree");
    auto eps = separation(cx.ring(), cx.norm());
    if (!eps || *eps < 1) throw UnsupportedError("bounded_filling needs a 1-separated norm");

    Chain y = cx.zero_chain(n);
    std::vector<Chain> comps = connected_components(cx, c);
    for (size_t j = 0; j < comps.size(); ++j) {
        GroupElem h = comps[j].coeffs.begin()->first.g;
        Chain moved = cx.translate(cx.group().inverse(h), comps[j]);
        FillingProblem fp(cx, moved, true, budget);
        FillingResult r = filling_volume(fp);
        if (!r.found)
            throw Error("bounded_filling: component " + std::to_string(j) + " has no filling");
        y = cx.add(y, cx.translate(h, r.filling));
    }
    verify_filling(cx, y, c);

    WeightedFvTable local;
    if (!table) {
        local = weighted_fv_table(cx, n, budget);
        table = &local;
    }
    Rat x = cx.chain_norm(c, false);
    long long K = constants(cx, n - 1).K;
    Rat A = table->a_constant(x, K);
    Rat wbound = x * cx.chain_norm(c, true) * A;
    Rat bound = x * A;
    if (cx.chain_norm(y, true) > wbound || cx.chain_norm(y, false) > bound)
        throw Error("bounded_filling: norm bound violated");

    FillingResult res;
    res.found = true;
    res.filling = y;
    res.achieved_norm = cx.chain_norm(y, true);
    res.status = "bounded filling";
    res.certified_bound = wbound;
    return res;
}

Rat FillingFunctionTable::value_at(long long l) const {
    Rat best = 0;
    for (const auto& e : entries)
        if (e.l <= l && e.value > best) best = e.value;
    return best;
}

namespace {

// Nonzero cycles supported on exactly U, coefficients from ring_ball(l_max).
std::vector<Chain> cycles_on_support(const FreeComplex& cx, int degree, const std::set<Cell>& U,
                                     const Rat& l_max) {
    std::vector<RElem> values = ring_ball(cx.ring(), cx.norm(), l_max);
    std::vector<RElem> nonzero;
    for (const auto& v : values)
        if (!cx.ring().is_zero(v)) nonzero.push_back(v);
    std::vector<Cell> cells(U.begin(), U.end());
    std::vector<Chain> out;
    std::vector<RElem> cur(cells.size());
    std::function<void(size_t, Rat)> rec = [&](size_t j, Rat norm_so_far) {
        if (norm_so_far > l_max) return;
        if (j == cells.size()) {
            Chain z = cx.zero_chain(degree);
            for (size_t i = 0; i < cells.size(); ++i) z.coeffs[cells[i]] = cur[i];
            if (cx.boundary(z).is_zero()) out.push_back(std::move(z));
            return;
        }
        for (const RElem& v : nonzero) {
            cur[j] = v;
            rec(j + 1, norm_so_far + norm_value(cx.ring(), cx.norm(), v));
        }
    };
    rec(0, Rat(0));
    return out;
}

}  // namespace

FillingFunctionTable filling_function_table(const FreeComplex& cx, int degree, long long l_max,
                                            TableMode mode, bool weighted, SolverBudget budget) {
    if (degree < 1 || degree > cx.max_degree())
        throw DomainError("filling_function_table: degree out of range");
    if (l_max < 0) throw DomainError("filling_function_table: negative range");
    auto eps_opt = separation(cx.ring(), cx.norm());
    if (!eps_opt || *eps_opt <= 0)
        throw UnsupportedError("filling_function_table needs a separated norm");
    Rat eps = *eps_opt;

    FillingFunctionTable table;
    table.degree = degree;
    table.weighted = weighted;

    // connected-cycle maxima D(l) from orbit representatives
    long long support_max = static_cast<long long>(rat_floor(Rat(l_max) / eps));
    std::vector<std::set<Cell>> reps = orbit_representatives(cx, degree - 1, support_max);
    struct Piece {
        Chain cycle;
        Rat norm;
        Rat fv;
    };
    std::vector<Piece> connected_pieces;
    for (const auto& U : reps) {
        if (U.empty()) continue;
        for (Chain& z : cycles_on_support(cx, degree - 1, U, Rat(l_max))) {
            Rat nz = cx.chain_norm(z, weighted);
            if (nz > Rat(l_max)) continue;
            FillingProblem fp(cx, z, weighted, budget);
            FillingResult r = filling_volume(fp);
            if (!r.found || !r.exact_minimum)
                throw BudgetError("filling_function_table: component volume not certified");
            connected_pieces.push_back({std::move(z), nz, r.achieved_norm});
        }
    }
    std::vector<Rat> D(static_cast<size_t>(l_max) + 1, Rat(0));
    for (const auto& pc : connected_pieces)
        for (long long l = 0; l <= l_max; ++l)
            if (pc.norm <= Rat(l) && pc.fv > D[static_cast<size_t>(l)])
                D[static_cast<size_t>(l)] = pc.fv;
    for (long long l = 1; l <= l_max; ++l)  // monotone closure
        if (D[static_cast<size_t>(l - 1)] > D[static_cast<size_t>(l)])
            D[static_cast<size_t>(l)] = D[static_cast<size_t>(l - 1)];
    // partition-combine upper bound (knapsack over integer norm budgets)
    std::vector<Rat> comb(static_cast<size_t>(l_max) + 1, Rat(0));
    for (long long l = 1; l <= l_max; ++l) {
        Rat best = D[static_cast<size_t>(l)];
        for (long long i = 1; i < l; ++i) {
            Rat v = D[static_cast<size_t>(i)] + comb[static_cast<size_t>(l - i)];
            if (v > best) best = v;
        }
        comb[static_cast<size_t>(l)] = best;
    }

    std::vector<Rat> values(static_cast<size_t>(l_max) + 1, Rat(0));
    std::string status;
    if (mode == TableMode::Oracle) {
        if (!cx.group().finite())
            throw UnsupportedError("oracle table mode needs a finite group");
        for (const Chain& z : enumerate_cycles(cx, degree - 1, budget)) {
            if (z.is_zero()) continue;
            Rat nz = cx.chain_norm(z, weighted);
            if (nz > Rat(l_max)) continue;
            FillingProblem fp(cx, z, weighted, budget);
            FillingResult r = filling_volume(fp);
            if (!r.found || !r.exact_minimum)
                throw BudgetError("oracle table: cycle volume not certified");
            for (long long l = 0; l <= l_max; ++l)
                if (nz <= Rat(l) && r.achieved_norm > values[static_cast<size_t>(l)])
                    values[static_cast<size_t>(l)] = r.achieved_norm;
        }
        status = "exact";
    } else if (cx.group().finite()) {
        // realizable disjoint unions of translated connected cycles
        std::set<std::map<Cell, RElem>> seen;
        std::vector<Piece> placed;
        for (const auto& pc : connected_pieces)
            for (const auto& g : cx.group().group_ball(cx.group().order())) {
                Chain t = cx.translate(g, pc.cycle);
                if (seen.insert(t.coeffs).second) placed.push_back({t, pc.norm, pc.fv});
            }
        std::function<void(size_t, Chain, Rat)> rec = [&](size_t start, Chain sum, Rat norm_sum) {
            if (!sum.is_zero()) {
                FillingProblem fp(cx, sum, weighted, budget);
                FillingResult r = filling_volume(fp);
                if (!r.found || !r.exact_minimum)
                    throw BudgetError("orbit table: combination volume not certified");
                for (long long l = 0; l <= l_max; ++l)
                    if (norm_sum <= Rat(l) && r.achieved_norm > values[static_cast<size_t>(l)])
                        values[static_cast<size_t>(l)] = r.achieved_norm;
            }
            for (size_t i = start; i < placed.size(); ++i) {
                if (norm_sum + placed[i].norm > Rat(l_max)) continue;
                bool disjoint = true;
                for (const auto& [cell, q] : placed[i].cycle.coeffs)
                    if (sum.coeffs.count(cell)) {
                        disjoint = false;
                        break;
                    }
                if (!disjoint) continue;
                rec(i + 1, cx.add(sum, placed[i].cycle), norm_sum + placed[i].norm);
            }
        };
        rec(0, cx.zero_chain(degree - 1), Rat(0));
        status = "exact";
    } else {
        values = comb;
        status = "upper bound";
    }

    for (long long l = 1; l <= l_max; ++l)  // monotone closure
        if (values[static_cast<size_t>(l - 1)] > values[static_cast<size_t>(l)])
            values[static_cast<size_t>(l)] = values[static_cast<size_t>(l - 1)];
    for (long long l = 0; l <= l_max; ++l) {
        TableEntry e;
        e.l = l;
        e.value = values[static_cast<size_t>(l)];
        e.combine_upper = comb[static_cast<size_t>(l)];
        e.status = status;
        table.entries.push_back(e);
    }
    return table;
}

std::optional<std::pair<long long, long long>> preccurlyeq_witness(const FillingFunctionTable& f,
                                                                   const FillingFunctionTable& g,
                                                                   long long C_max,
                                                                   long long D_max) {
    if (f.entries.empty() || g.entries.empty())
        throw DomainError("preccurlyeq_witness: empty table");
    for (long long C = 1; C <= C_max; ++C)
        for (long long Dshift = 0; Dshift <= D_max; ++Dshift) {
            bool any = false;
            bool ok = true;
            for (const auto& e : f.entries) {
                long long arg = C * e.l + Dshift;
                if (arg > g.max_l()) continue;
                any = true;
                Rat rhs = Rat(C) * g.value_at(arg) + Rat(arg);
                if (e.value > rhs) {
                    ok = false;
                    break;
                }
            }
            if (!any) throw DomainError("preccurlyeq_witness: tables do not overlap");
            if (ok) return std::make_pair(C, Dshift);
        }
    return std::nullopt;
}

}  // namespace fillvol

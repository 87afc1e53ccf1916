#include "fillvol/qi_transfer.hpp"

#include <algorithm>
#include <deque>

namespace fillvol {

namespace {

long long dist(const GroupModel& g, const GroupElem& a, const GroupElem& b) {
    return g.word_length(g.multiply(g.inverse(a), b));
}

// Lex-least shortest generator word from `from` to `to` (letters in the
// order +1, -1, +2, -2, ...). FIFO BFS with ordered expansion enqueues
// nodes in lex order of their paths, so the first arrival wins.
std::vector<int> shortest_path_word(const GroupModel& g, const GroupElem& from,
                                    const GroupElem& to) {
    if (from == to) return {};
    std::map<GroupElem, std::pair<GroupElem, int>> parent;
    std::deque<GroupElem> queue{from};
    parent[from] = {from, 0};
    long long guard = 0;
    while (!queue.empty()) {
        GroupElem cur = queue.front();
        queue.pop_front();
        if (++guard > 2000000) throw BudgetError("path search exceeded budget");
        for (size_t s = 0; s < g.generators().size(); ++s)
            for (int sign : {1, -1}) {
                GroupElem step = g.generators()[s];
                if (sign < 0) step = g.inverse(step);
                GroupElem nxt = g.multiply(cur, step);
                if (parent.count(nxt)) continue;
                parent[nxt] = {cur, sign * (static_cast<int>(s) + 1)};
                if (nxt == to) {
                    std::vector<int> word;
                    GroupElem walk = to;
                    while (walk != from) {
                        auto& [p, letter] = parent[walk];
                        word.push_back(letter);
                        walk = p;
                    }
                    std::reverse(word.begin(), word.end());
                    return word;
                }
                queue.push_back(nxt);
            }
    }
    throw DomainError("target element not reachable");
}

// The path from `start` along `word` as a degree-1 chain of the Cayley-
// shaped complex: +g e_s per forward step, -(g s^-1) e_s per inverse step.
Chain path_chain(const FreeComplex& cx, const GroupElem& start, const std::vector<int>& word) {
    const GroupModel& g = cx.group();
    const Ring& ring = cx.ring();
    Chain out = cx.zero_chain(1);
    GroupElem cur = start;
    for (int letter : word) {
        int idx = std::abs(letter) - 1;
        const GroupElem& s = g.generators()[static_cast<size_t>(idx)];
        if (letter > 0) {
            Cell e{idx, cur};
            out = cx.add(out, cx.make_chain(1, {{e, ring.one()}}));
            cur = g.multiply(cur, s);
        } else {
            cur = g.multiply(cur, g.inverse(s));
            Cell e{idx, cur};
            out = cx.add(out, cx.make_chain(1, {{e, ring.from_int(-1)}}));
        }
    }
    return out;
}

// Degrees 0-1 must look like the Cayley complex of the group's generators.
void require_cayley_shape(const FreeComplex& cx) {
    if (cx.max_degree() < 1) throw DomainError("complex must be loaded through degree 1");
    if (cx.rank(0) != 1) throw DomainError("degree 0 must have a single basis cell");
    const auto& gens = cx.group().generators();
    if (static_cast<size_t>(cx.rank(1)) != gens.size())
        throw DomainError("degree 1 must have one basis cell per generator");
    for (size_t j = 0; j < gens.size(); ++j) {
        Chain expected = cx.sub(
            cx.make_chain(0, {{Cell{0, gens[j]}, cx.ring().one()}}),
            cx.make_chain(0, {{Cell{0, cx.group().identity()}, cx.ring().one()}}));
        Chain actual = cx.boundary_of_cell(1, Cell{static_cast<int>(j), cx.group().identity()});
        if (!cx.sub(actual, expected).is_zero())
            throw DomainError("degree-1 boundary does not match the Cayley graph");
    }
}

std::vector<GroupElem> whole_group(const GroupModel& g) {
    if (!g.finite()) throw UnsupportedError("chain-map regions require a finite group");
    return g.group_ball(g.order());
}

Rat unit_norm(const FreeComplex& cx) {
    return norm_value(cx.ring(), cx.norm(), cx.ring().one());
}

Rat weighted_cell_norm(const FreeComplex& cx, const Cell& cell) {
    return unit_norm(cx) * Rat(1 + cx.group().word_length(cell.g));
}

Rat max_boundary_norm(const FreeComplex& cx, int degree) {  // C_k
    Rat best = 0;
    for (int b = 0; b < cx.rank(degree); ++b) {
        Rat v = cx.chain_norm(cx.boundary_of_cell(degree, Cell{b, cx.group().identity()}), false);
        if (v > best) best = v;
    }
    return best;
}

Rat boundary_weighted_bound(const FreeComplex& cx, int degree) {  // M_k
    std::vector<std::vector<GroupRingElement>> imgs;
    for (int b = 0; b < cx.rank(degree); ++b) {
        std::vector<GroupRingElement> components(static_cast<size_t>(cx.rank(degree - 1)));
        Chain d = cx.boundary_of_cell(degree, Cell{b, cx.group().identity()});
        for (const auto& [cell, coeff] : d.coeffs) {
            auto& comp = components[static_cast<size_t>(cell.basis)];
            comp = gr_add(cx.ring(), comp, gr_single(cell.g, coeff, cx.ring()));
        }
        imgs.push_back(std::move(components));
    }
    return operator_weighted_bound(cx.ring(), cx.norm(), cx.group(), imgs);
}

}  // namespace

QuasiIsometryData identity_qi(const GroupModel& source, const GroupModel& target, long long K) {
    if (K < 1) throw DomainError("quasi-isometry constant must be >= 1");
    QuasiIsometryData qi;
    qi.source = &source;
    qi.target = &target;
    qi.K = K;
    for (const auto& g : whole_group(source)) {
        if (!target.contains(g)) throw DomainError("identity_qi: element sets differ");
        qi.f[g] = g;
    }
    for (const auto& g : whole_group(target)) qi.h[g] = g;
    return qi;
}

QuasiIsometryData inverse_qi(const QuasiIsometryData& qi) {
    QuasiIsometryData out;
    out.source = qi.target;
    out.target = qi.source;
    out.K = qi.K;
    out.f = qi.h;
    out.h = qi.f;
    return out;
}

void verify_qi(const QuasiIsometryData& qi) {
    if (qi.K < 1) throw DomainError("quasi-isometry constant must be >= 1");
    const GroupModel& G = *qi.source;
    const GroupModel& H = *qi.target;
    const Rat K(qi.K);
    for (const auto& [g1, fg1] : qi.f)
        for (const auto& [g2, fg2] : qi.f) {
            Rat dG(dist(G, g1, g2));
            Rat dH(dist(H, fg1, fg2));
            if (dH > K * dG + K || dH < dG / K - K)
                throw DomainError("quasi-isometry inequality fails at a sampled pair");
        }
    for (const auto& [g, fg] : qi.f) {
        auto it = qi.h.find(fg);
        if (it == qi.h.end()) throw DomainError("h table does not cover the image of f");
        if (dist(G, it->second, g) > qi.K)
            throw DomainError("h(f(g)) is not K-close to g");
    }
}

Chain PartialChainMap::apply(int degree, const Chain& x) const {
    if (degree < 0 || degree > top_degree) throw DomainError("chain map degree out of range");
    Chain out = to->zero_chain(degree);
    for (const auto& [cell, coeff] : x.coeffs) {
        auto it = images[static_cast<size_t>(degree)].find(cell);
        if (it == images[static_cast<size_t>(degree)].end())
            throw RegionError("cell outside the chain-map region: " +
                              from->cell_to_string(degree, cell));
        out = to->add(out, to->scale(coeff, it->second));
    }
    return out;
}

Chain PartialHomotopy::apply(int degree, const Chain& x) const {
    if (degree < 0 || degree > top_degree) throw DomainError("homotopy degree out of range");
    Chain out = cx->zero_chain(degree + 1);
    for (const auto& [cell, coeff] : x.coeffs) {
        auto it = images[static_cast<size_t>(degree)].find(cell);
        if (it == images[static_cast<size_t>(degree)].end())
            throw RegionError("cell outside the homotopy region: " +
                              cx->cell_to_string(degree, cell));
        out = cx->add(out, cx->scale(coeff, it->second));
    }
    return out;
}

PartialChainMap build_chain_map(const QuasiIsometryData& qi, const FreeComplex& LG,
                                const FreeComplex& LH, int n, SolverBudget budget) {
    if (n < 1 || n > LG.max_degree() || n > LH.max_degree())
        throw DomainError("build_chain_map: degree out of range");
    if (!LG.ring().same_as(LH.ring())) throw DomainError("coefficient rings differ");
    require_cayley_shape(LG);
    require_cayley_shape(LH);
    verify_qi(qi);
    const GroupModel& G = *qi.source;
    const GroupModel& H = *qi.target;

    PartialChainMap map;
    map.from = &LG;
    map.to = &LH;
    map.top_degree = n;
    map.images.resize(static_cast<size_t>(n) + 1);

    std::vector<GroupElem> region = whole_group(G);

    // degree 0: linear extension of f
    for (const auto& g : region) {
        const GroupElem& fg = qi.f.at(g);
        map.images[0][Cell{0, g}] = LH.make_chain(0, {{Cell{0, fg}, LH.ring().one()}});
    }

    // degree 1: BFS paths from f(g) to f(gs)
    for (const auto& g : region)
        for (size_t s = 0; s < G.generators().size(); ++s) {
            GroupElem gs = G.multiply(g, G.generators()[s]);
            auto word = shortest_path_word(H, qi.f.at(g), qi.f.at(gs));
            if (static_cast<long long>(word.size()) > 2 * qi.K + 1)
                throw Error("path longer than the 2K+1 guarantee");
            map.images[1][Cell{static_cast<int>(s), g}] = path_chain(LH, qi.f.at(g), word);
        }

    // higher degrees by bounded filling of the pushed-down boundary
    std::vector<WeightedFvTable> tables(static_cast<size_t>(n) + 1);
    for (int k = 2; k <= n; ++k) tables[static_cast<size_t>(k)] = weighted_fv_table(LH, k, budget);
    for (int k = 2; k <= n; ++k)
        for (const auto& g : region)
            for (int b = 0; b < LG.rank(k); ++b) {
                Cell cell{b, g};
                Chain c = map.apply(k - 1, LG.boundary_of_cell(k, cell));
                FillingResult y = bounded_filling(LH, c, budget, &tables[static_cast<size_t>(k)]);
                map.images[static_cast<size_t>(k)][cell] = y.filling;
            }

    // chain-map identity on every region cell
    for (int i = 1; i <= n; ++i)
        for (const auto& [cell, img] : map.images[static_cast<size_t>(i)]) {
            Chain lhs = LH.boundary(img);
            Chain rhs = map.apply(i - 1, LG.boundary_of_cell(i, cell));
            if (!LH.sub(lhs, rhs).is_zero())
                throw Error("chain-map identity fails at " + LG.cell_to_string(i, cell));
        }

    // constants: proof formulas and observed maxima
    Rat K(qi.K);
    Rat K1H(constants(LH, 1).K);
    map.D.assign(static_cast<size_t>(n) + 1, 0);
    map.D_weighted.assign(static_cast<size_t>(n) + 1, 0);
    map.D[0] = 1;
    map.D_weighted[0] = 2 * K;
    if (n >= 1) {
        map.D[1] = 2 * K + 1;
        map.D_weighted[1] = (2 * K + 1) * (map.D_weighted[0] + K1H + 4 * K * K1H);
    }
    for (int k = 2; k <= n; ++k) {
        Rat Ck = max_boundary_norm(LG, k);
        Rat Mk = boundary_weighted_bound(LG, k);
        Rat x = map.D[static_cast<size_t>(k - 1)] * Ck;
        Rat A = tables[static_cast<size_t>(k)].a_constant(x, constants(LH, k - 1).K);
        map.D[static_cast<size_t>(k)] = x * A;
        map.D_weighted[static_cast<size_t>(k)] =
            Mk * map.D_weighted[static_cast<size_t>(k - 1)] * x * A;
    }
    map.observed.assign(static_cast<size_t>(n) + 1, 0);
    map.observed_weighted.assign(static_cast<size_t>(n) + 1, 0);
    for (int i = 0; i <= n; ++i)
        for (const auto& [cell, img] : map.images[static_cast<size_t>(i)]) {
            Rat r = LH.chain_norm(img, false) / unit_norm(LG);
            Rat rw = LH.chain_norm(img, true) / weighted_cell_norm(LG, cell);
            auto& o = map.observed[static_cast<size_t>(i)];
            auto& ow = map.observed_weighted[static_cast<size_t>(i)];
            if (r > o) o = r;
            if (rw > ow) ow = rw;
        }
    for (int i = 0; i <= n; ++i) {
        if (map.observed[static_cast<size_t>(i)] > map.D[static_cast<size_t>(i)])
            throw Error("formula constant D does not dominate the observed ratio");
        if (map.observed_weighted[static_cast<size_t>(i)] > map.D_weighted[static_cast<size_t>(i)])
            throw Error("formula constant D~ does not dominate the observed ratio");
    }
    return map;
}

PartialHomotopy build_homotopy(const QuasiIsometryData& qi, const PartialChainMap& f_map,
                               const PartialChainMap& h_map, const FreeComplex& LG, int n,
                               SolverBudget budget) {
    if (n < 1 || n > LG.max_degree()) throw DomainError("build_homotopy: degree out of range");
    const GroupModel& G = *qi.source;
    PartialHomotopy s;
    s.cx = &LG;
    s.top_degree = n - 1;
    s.images.resize(static_cast<size_t>(n));

    std::vector<GroupElem> region = whole_group(G);

    // degree 0: paths g -> h(f(g)) of length <= K
    for (const auto& g : region) {
        GroupElem hfg = qi.h.at(qi.f.at(g));
        auto word = shortest_path_word(G, g, hfg);
        if (static_cast<long long>(word.size()) > qi.K)
            throw Error("closeness path longer than the K guarantee");
        s.images[0][Cell{0, g}] = path_chain(LG, g, word);
    }

    std::vector<WeightedFvTable> tables(static_cast<size_t>(n) + 1);
    for (int i = 1; i <= n - 1; ++i)
        tables[static_cast<size_t>(i + 1)] = weighted_fv_table(LG, i + 1, budget);
    for (int i = 1; i <= n - 1; ++i)
        for (const auto& g : region)
            for (int b = 0; b < LG.rank(i); ++b) {
                Cell cell{b, g};
                Chain id_part = LG.make_chain(i, {{cell, LG.ring().one()}});
                Chain hf = h_map.apply(i, f_map.apply(i, id_part));
                Chain lower = s.apply(i - 1, LG.boundary_of_cell(i, cell));
                Chain cprime = LG.sub(LG.sub(id_part, hf), lower);
                FillingResult y =
                    bounded_filling(LG, cprime, budget, &tables[static_cast<size_t>(i + 1)]);
                s.images[static_cast<size_t>(i)][cell] = y.filling;
            }

    // homotopy identity on every region cell
    for (int i = 0; i <= n - 1; ++i)
        for (const auto& [cell, img] : s.images[static_cast<size_t>(i)]) {
            Chain id_part = LG.make_chain(i, {{cell, LG.ring().one()}});
            Chain lhs = LG.boundary(img);
            if (i > 0) lhs = LG.add(lhs, s.apply(i - 1, LG.boundary_of_cell(i, cell)));
            Chain rhs = LG.sub(id_part, h_map.apply(i, f_map.apply(i, id_part)));
            if (!LG.sub(lhs, rhs).is_zero())
                throw Error("homotopy identity fails at " + LG.cell_to_string(i, cell));
        }

    // constants
    Rat K(qi.K);
    Rat K1G(constants(LG, 1).K);
    s.E.assign(static_cast<size_t>(n), 0);
    s.E_weighted.assign(static_cast<size_t>(n), 0);
    s.F.assign(static_cast<size_t>(n), 0);
    s.E[0] = K;
    s.E_weighted[0] = K * (1 + (K - 1) * 2 * K1G);
    Rat one_norm = unit_norm(LG);
    for (int i = 1; i <= n - 1; ++i) {
        Rat Ci = max_boundary_norm(LG, i);
        Rat Mi = boundary_weighted_bound(LG, i);
        Rat Fi = one_norm +
                 h_map.D[static_cast<size_t>(i)] * f_map.D[static_cast<size_t>(i)] * one_norm +
                 s.E[static_cast<size_t>(i - 1)] * Ci;
        s.F[static_cast<size_t>(i)] = Fi;
        Rat A = tables[static_cast<size_t>(i + 1)].a_constant(Fi, constants(LG, i).K);
        s.E[static_cast<size_t>(i)] = Fi * A;
        s.E_weighted[static_cast<size_t>(i)] =
            s.E[static_cast<size_t>(i)] *
            (1 + f_map.D_weighted[static_cast<size_t>(i)] * h_map.D_weighted[static_cast<size_t>(i)] +
             s.E_weighted[static_cast<size_t>(i - 1)] * Mi);
    }
    s.observed.assign(static_cast<size_t>(n), 0);
    s.observed_weighted.assign(static_cast<size_t>(n), 0);
    for (int i = 0; i <= n - 1; ++i)
        for (const auto& [cell, img] : s.images[static_cast<size_t>(i)]) {
            Rat r = LG.chain_norm(img, false) / unit_norm(LG);
            Rat rw = LG.chain_norm(img, true) / weighted_cell_norm(LG, cell);
            auto& o = s.observed[static_cast<size_t>(i)];
            auto& ow = s.observed_weighted[static_cast<size_t>(i)];
            if (r > o) o = r;
            if (rw > ow) ow = rw;
        }
    for (int i = 0; i <= n - 1; ++i) {
        if (s.observed[static_cast<size_t>(i)] > s.E[static_cast<size_t>(i)])
            throw Error("formula constant E does not dominate the observed ratio");
        if (s.observed_weighted[static_cast<size_t>(i)] > s.E_weighted[static_cast<size_t>(i)])
            throw Error("formula constant E~ does not dominate the observed ratio");
    }
    return s;
}

FillingResult qi_transfer_filling(const QuasiIsometryData& qi, const PartialChainMap& f_map,
                                  const PartialChainMap& h_map, const PartialHomotopy& s,
                                  const Chain& z, SolverBudget budget) {
    const FreeComplex& LG = *f_map.from;
    const FreeComplex& LH = *f_map.to;
    int n = z.degree + 1;
    if (!LG.boundary(z).is_zero()) throw DomainError("transfer input is not a cycle");
    if (z.is_zero()) return FillingResult{true, LG.zero_chain(n <= LG.max_degree() ? n : z.degree),
                                          0, true, "exact minimum", -1, 0, 0};
    if (n > f_map.top_degree || n > h_map.top_degree || n - 1 > s.top_degree)
        throw DomainError("transfer degree exceeds the constructed maps");

    Chain fz = f_map.apply(n - 1, z);
    FillingProblem fp(LH, fz, false, budget);
    FillingResult fill_h = filling_volume(fp);
    if (!fill_h.found) throw Error("no filling of the pushed-forward cycle");

    Chain result = LG.add(h_map.apply(n, fill_h.filling), s.apply(n - 1, z));
    if (!LG.sub(LG.boundary(result), z).is_zero())
        throw Error("transferred filling fails the boundary check");

    Rat znorm = LG.chain_norm(z, false);
    FillingFunctionTable fvh = filling_function_table(
        LH, n,
        std::max<long long>(0, static_cast<long long>(
                                   rat_floor(f_map.D[static_cast<size_t>(n - 1)] * znorm))),
        TableMode::Oracle, false, budget);
    Rat bound = h_map.D[static_cast<size_t>(n)] *
                    (fvh.value_at(fvh.max_l()) + 1) +
                s.E[static_cast<size_t>(n - 1)] * znorm;
    FillingResult res;
    res.found = true;
    res.filling = result;
    res.achieved_norm = LG.chain_norm(result, false);
    res.status = "transferred filling";
    res.certified_bound = bound;
    if (res.achieved_norm > bound) throw Error("transfer bound violated");
    return res;
}

}  // namespace fillvol

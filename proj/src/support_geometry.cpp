#include "fillvol/support_geometry.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace fillvol {

std::vector<Cell> supp_R(const Chain& c) {
    std::vector<Cell> out;
    out.reserve(c.coeffs.size());
    for (const auto& [cell, coeff] : c.coeffs) out.push_back(cell);
    return out;
}

std::vector<GroupElem> supp_Gamma(const Chain& c) {
    std::set<GroupElem> seen;
    for (const auto& [cell, coeff] : c.coeffs) seen.insert(cell.g);
    return {seen.begin(), seen.end()};
}

SupportGraph build_gr(const FreeComplex& cx, int degree, const std::vector<Cell>& cells) {
    if (degree < 0 || degree > cx.max_degree()) throw DomainError("build_gr: degree out of range");
    SupportGraph g;
    g.degree = degree;
    g.vertices = cells;
    std::sort(g.vertices.begin(), g.vertices.end());
    g.vertices.erase(std::unique(g.vertices.begin(), g.vertices.end()), g.vertices.end());
    for (const auto& v : g.vertices)
        if (v.basis < 0 || v.basis >= cx.rank(degree))
            throw DomainError("build_gr: cell outside the degree-" + std::to_string(degree) +
                              " basis");
    if (degree == 0) return g;  // boundaries land in the empty degree -1

    // bucket vertices by the basis cells of their boundaries
    std::map<Cell, std::vector<int>> incident;
    for (size_t i = 0; i < g.vertices.size(); ++i) {
        Chain d = cx.boundary_of_cell(degree, g.vertices[i]);
        for (const auto& [w, coeff] : d.coeffs) incident[w].push_back(static_cast<int>(i));
    }
    std::set<std::pair<int, int>> edges;
    for (const auto& [w, idx] : incident)
        for (size_t a = 0; a < idx.size(); ++a)
            for (size_t b = a + 1; b < idx.size(); ++b)
                edges.insert({std::min(idx[a], idx[b]), std::max(idx[a], idx[b])});
    g.edges.assign(edges.begin(), edges.end());
    return g;
}

GraphSummary summarize_graph(const SupportGraph& g) {
    GraphSummary s;
    s.vertex_count = g.vertices.size();
    s.edge_count = g.edges.size();
    std::vector<size_t> deg(g.vertices.size(), 0);
    for (const auto& [a, b] : g.edges) {
        ++deg[static_cast<size_t>(a)];
        ++deg[static_cast<size_t>(b)];
    }
    s.regular = !deg.empty() && std::all_of(deg.begin(), deg.end(),
                                            [&](size_t d) { return d == deg[0]; });
    if (s.regular) s.regularity = deg[0];
    const size_t n = s.vertex_count;
    if (s.edge_count == 0) {
        s.cls = GraphClass::Edgeless;
    } else if (n >= 3 && s.edge_count == n && s.regular && s.regularity == 2 &&
               [&] {  // connectivity: a 2-regular graph with n edges is a union of cycles
                   std::vector<std::vector<int>> adj(n);
                   for (const auto& [a, b] : g.edges) {
                       adj[static_cast<size_t>(a)].push_back(b);
                       adj[static_cast<size_t>(b)].push_back(a);
                   }
                   std::vector<bool> seen(n, false);
                   std::deque<int> q{0};
                   seen[0] = true;
                   size_t count = 1;
                   while (!q.empty()) {
                       int v = q.front();
                       q.pop_front();
                       for (int w : adj[static_cast<size_t>(v)])
                           if (!seen[static_cast<size_t>(w)]) {
                               seen[static_cast<size_t>(w)] = true;
                               ++count;
                               q.push_back(w);
                           }
                   }
                   return count == n;
               }()) {
        s.cls = GraphClass::Cycle;
    } else if (s.edge_count == n * (n - 1) / 2 && s.regular && s.regularity == n - 1) {
        s.cls = GraphClass::Complete;
    }
    return s;
}

std::vector<Chain> connected_components(const FreeComplex& cx, const Chain& c) {
    if (c.is_zero()) return {};
    SupportGraph g = build_gr(cx, c.degree, supp_R(c));
    const size_t n = g.vertices.size();
    std::vector<std::vector<int>> adj(n);
    for (const auto& [a, b] : g.edges) {
        adj[static_cast<size_t>(a)].push_back(b);
        adj[static_cast<size_t>(b)].push_back(a);
    }
    std::vector<int> comp(n, -1);
    int ncomp = 0;
    for (size_t start = 0; start < n; ++start) {
        if (comp[start] >= 0) continue;
        std::deque<size_t> q{start};
        comp[start] = ncomp;
        while (!q.empty()) {
            size_t v = q.front();
            q.pop_front();
            for (int w : adj[v])
                if (comp[static_cast<size_t>(w)] < 0) {
                    comp[static_cast<size_t>(w)] = ncomp;
                    q.push_back(static_cast<size_t>(w));
                }
        }
        ++ncomp;
    }
    // vertices are sorted, so component indices are already ordered by minimal cell
    std::vector<Chain> parts(static_cast<size_t>(ncomp));
    for (auto& p : parts) p.degree = c.degree;
    for (size_t i = 0; i < n; ++i)
        parts[static_cast<size_t>(comp[i])].coeffs[g.vertices[i]] = c.coeffs.at(g.vertices[i]);
    return parts;
}

GeometricConstants constants(const FreeComplex& cx, int degree) {
    if (degree < 0 || degree > cx.max_degree())
        throw DomainError("constants: degree out of range");
    GeometricConstants out;
    out.degree = degree;
    if (degree == 0) return out;  // K_0 := 0
    for (const auto& terms : cx.degree_data(degree).boundary)
        for (const auto& t : terms)
            if (!cx.ring().is_zero(t.coeff)) out.A.insert(t.g);
    for (const auto& h : out.A) out.K = std::max(out.K, cx.group().word_length(h));
    return out;
}

std::vector<Cell> neighbor_cells_above(const FreeComplex& cx, int degree, const Cell& u) {
    if (degree < 0 || degree > cx.max_degree())
        throw DomainError("neighbor_cells_above: degree out of range");
    if (u.basis < 0 || u.basis >= cx.rank(degree))
        throw DomainError("neighbor_cells_above: cell outside the basis");
    std::set<Cell> found;
    if (degree == cx.max_degree()) return {};
    const auto& above = cx.degree_data(degree + 1);
    for (size_t b = 0; b < above.boundary.size(); ++b) {
        for (const auto& t : above.boundary[b]) {
            if (t.target != u.basis) continue;
            // gamma * t.g = u.g forces gamma = u.g * t.g^-1; confirm the
            // merged coefficient at u survives cancellation
            GroupElem gamma = cx.group().multiply(u.g, cx.group().inverse(t.g));
            Cell cand{static_cast<int>(b), gamma};
            if (found.count(cand)) continue;
            Chain d = cx.boundary_of_cell(degree + 1, cand);
            if (d.coeffs.count(u)) found.insert(cand);
        }
    }
    return {found.begin(), found.end()};
}

std::vector<Cell> gr_neighbors(const FreeComplex& cx, int degree, const Cell& u) {
    std::set<Cell> out;
    if (degree == 0) return {};
    Chain d = cx.boundary_of_cell(degree, u);
    for (const auto& [w, coeff] : d.coeffs)
        for (const auto& v : neighbor_cells_above(cx, degree - 1, w))
            if (!(v == u)) out.insert(v);
    return {out.begin(), out.end()};
}

std::set<Cell> gr_ball(const FreeComplex& cx, int degree, const std::set<Cell>& seeds,
                       long long radius) {
    std::set<Cell> ball = seeds;
    std::vector<Cell> frontier(seeds.begin(), seeds.end());
    for (long long step = 0; step < radius && !frontier.empty(); ++step) {
        std::vector<Cell> next;
        for (const auto& u : frontier)
            for (const auto& v : gr_neighbors(cx, degree, u))
                if (ball.insert(v).second) next.push_back(v);
        frontier = std::move(next);
    }
    return ball;
}

}  // namespace fillvol

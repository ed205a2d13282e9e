#include "gips/chordal.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>

namespace gips {

std::vector<int> mcs_order(const Graph& g, const VertexSet& seed) {
    for (int s : seed)
        if (!g.has_vertex(s))
            throw std::invalid_argument("mcs_order: seed vertex not in graph");

    std::map<int, int> weight;
    std::set<int> unvisited;
    for (int v : g.vertices()) {
        weight[v] = 0;
        unvisited.insert(v);
    }

    std::vector<int> order;
    order.reserve(g.order());
    while (!unvisited.empty()) {
        int best = -1;
        bool best_seeded = false;
        for (int v : unvisited) {
            bool seeded = vset_contains(seed, v);
            if (best == -1 || weight[v] > weight[best] ||
                (weight[v] == weight[best] && seeded && !best_seeded)) {
                best = v;
                best_seeded = seeded;
            }
        }
        order.push_back(best);
        unvisited.erase(best);
        for (int u : g.neighbors(best))
            if (unvisited.count(u)) ++weight[u];
    }
    return order;
}

bool is_perfect_elimination_order(const Graph& g, const std::vector<int>& order) {
    if (static_cast<int>(order.size()) != g.order()) return false;
    std::map<int, int> pos;
    for (int i = 0; i < static_cast<int>(order.size()); ++i) {
        if (!g.has_vertex(order[i]) || pos.count(order[i])) return false;
        pos[order[i]] = i;
    }
    // Each vertex must be simplicial in the subgraph induced by itself
    // and the vertices eliminated after it.
    for (int i = 0; i < static_cast<int>(order.size()); ++i) {
        VertexSet later;
        for (int u : g.neighbors(order[i]))
            if (pos[u] > i) later.push_back(u);
        for (size_t a = 0; a < later.size(); ++a)
            for (size_t b = a + 1; b < later.size(); ++b)
                if (!g.has_edge(later[a], later[b])) return false;
    }
    return true;
}

std::optional<std::vector<int>> is_chordal(const Graph& g) {
    std::vector<int> visit = mcs_order(g);
    std::vector<int> elim(visit.rbegin(), visit.rend());
    if (is_perfect_elimination_order(g, elim)) return elim;
    return std::nullopt;
}

namespace {

// Orders the maximal cliques of a chordal graph by MCS completion time
// (the visit position of each clique's last vertex), which yields the
// running intersection property. Seeding the search inside `anchor`
// makes the first clique contain it. Fills in cliques, separators,
// residuals and the induced elimination order of `cs`.
void build_sequence(ChordalStructure& cs, const VertexSet& anchor) {
    const Graph& h = cs.extension;
    cs.anchor = anchor;
    cs.cliques = maximal_cliques(h);
    cs.separators.clear();
    cs.residuals.clear();
    cs.peo.clear();
    if (cs.cliques.empty()) return;

    std::vector<int> visit = mcs_order(h, anchor);
    std::map<int, int> pos;
    for (int i = 0; i < static_cast<int>(visit.size()); ++i) pos[visit[i]] = i;

    std::stable_sort(cs.cliques.begin(), cs.cliques.end(),
                     [&](const VertexSet& a, const VertexSet& b) {
                         int pa = 0, pb = 0;
                         for (int v : a) pa = std::max(pa, pos[v]);
                         for (int v : b) pb = std::max(pb, pos[v]);
                         if (pa != pb) return pa < pb;
                         return a < b;
                     });

    if (!anchor.empty() && !vset_is_subset(anchor, cs.cliques.front()))
        throw std::logic_error("build_sequence: anchored search missed the anchor clique");

    VertexSet seen;
    for (int m = 0; m < static_cast<int>(cs.cliques.size()); ++m) {
        const VertexSet& c = cs.cliques[m];
        if (m == 0) {
            cs.residuals.push_back(anchor.empty() ? c : vset_diff(c, anchor));
        } else {
            VertexSet sep = vset_intersect(c, seen);
            bool housed = false;
            for (int j = 0; j < m && !housed; ++j)
                housed = vset_is_subset(sep, cs.cliques[j]);
            if (!housed)
                throw std::logic_error("build_sequence: running intersection violated");
            cs.separators.push_back(sep);
            cs.residuals.push_back(vset_diff(c, sep));
        }
        seen = vset_union(seen, c);
    }

    for (int m = static_cast<int>(cs.cliques.size()) - 1; m >= 0; --m)
        for (auto it = cs.residuals[m].rbegin(); it != cs.residuals[m].rend(); ++it)
            cs.peo.push_back(*it);
    for (auto it = anchor.rbegin(); it != anchor.rend(); ++it) cs.peo.push_back(*it);

    if (!is_perfect_elimination_order(h, cs.peo))
        throw std::logic_error("build_sequence: induced order is not a perfect elimination order");
}

}  // namespace

ChordalStructure triangulate(const Graph& g) {
    // Greedy minimum fill: repeatedly eliminate the vertex whose
    // neighbourhood needs the fewest fill edges to become a clique,
    // breaking ties towards the smallest label.
    std::map<int, std::set<int>> adj;
    for (int v : g.vertices()) {
        auto& row = adj[v];
        for (int u : g.neighbors(v)) row.insert(u);
    }

    std::vector<Edge> fill;
    std::set<int> remaining(g.vertices().begin(), g.vertices().end());
    while (!remaining.empty()) {
        int best = -1;
        long best_fill = std::numeric_limits<long>::max();
        for (int v : remaining) {
            const auto& nb = adj[v];
            long deficiency = 0;
            for (auto a = nb.begin(); a != nb.end(); ++a) {
                auto b = a;
                for (++b; b != nb.end(); ++b)
                    if (!adj[*a].count(*b)) ++deficiency;
            }
            if (deficiency < best_fill) {
                best_fill = deficiency;
                best = v;
            }
        }
        const auto nb = adj[best];
        for (auto a = nb.begin(); a != nb.end(); ++a) {
            auto b = a;
            for (++b; b != nb.end(); ++b)
                if (!adj[*a].count(*b)) {
                    fill.push_back(make_edge(*a, *b));
                    adj[*a].insert(*b);
                    adj[*b].insert(*a);
                }
        }
        for (int u : nb) adj[u].erase(best);
        adj.erase(best);
        remaining.erase(best);
    }

    ChordalStructure cs;
    cs.extension = g.with_edges(fill);
    cs.fill_edges = std::move(fill);
    build_sequence(cs, {});
    return cs;
}

ChordalStructure perfect_sequence_from(const ChordalStructure& cs, const VertexSet& anchor) {
    if (anchor.empty())
        throw std::invalid_argument("perfect_sequence_from: anchor must be nonempty");
    if (!cs.extension.is_clique(anchor))
        throw std::invalid_argument("perfect_sequence_from: anchor is not a clique of the extension");
    ChordalStructure out;
    out.extension = cs.extension;
    out.fill_edges = cs.fill_edges;
    build_sequence(out, anchor);
    return out;
}

std::pair<Graph, std::vector<Edge>> minimal_triangulation(const Graph& g) {
    // MCS-M (Berry et al.): like maximum cardinality search, but a
    // vertex y is reachable from the current vertex z - and gets its
    // weight bumped plus a fill edge if needed - when some path through
    // unnumbered vertices keeps every interior weight below w(y).
    std::map<int, int> weight;
    std::set<int> unnumbered;
    for (int v : g.vertices()) {
        weight[v] = 0;
        unnumbered.insert(v);
    }

    std::vector<Edge> fill;
    while (!unnumbered.empty()) {
        int z = -1;
        for (int v : unnumbered)
            if (z == -1 || weight[v] > weight[z]) z = v;

        // Minimax path weights from z through unnumbered interiors:
        // d[y] = the smallest achievable maximum interior weight, -1
        // when a direct edge exists. Dijkstra applies since extending a
        // path through x raises the bound to max(d[x], w[x]).
        std::map<int, int> d;
        using QE = std::pair<int, int>;  // (bound, vertex)
        std::priority_queue<QE, std::vector<QE>, std::greater<>> queue;
        for (int u : g.neighbors(z))
            if (unnumbered.count(u) && u != z) {
                d[u] = -1;
                queue.push({-1, u});
            }
        while (!queue.empty()) {
            auto [bound, x] = queue.top();
            queue.pop();
            if (d.count(x) && d[x] < bound) continue;
            for (int u : g.neighbors(x)) {
                if (!unnumbered.count(u) || u == z) continue;
                int next = std::max(bound, weight[x]);
                if (!d.count(u) || next < d[u]) {
                    d[u] = next;
                    queue.push({next, u});
                }
            }
        }

        for (auto [y, bound] : d)
            if (bound < weight[y]) {
                ++weight[y];
                if (!g.has_edge(z, y)) fill.push_back(make_edge(z, y));
            }
        unnumbered.erase(z);
    }

    std::sort(fill.begin(), fill.end());
    return {g.with_edges(fill), fill};
}

}  // namespace gips

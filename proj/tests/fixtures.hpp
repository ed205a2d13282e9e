// Shared test fixtures and independent brute-force oracles. The oracles
// are deliberately naive (bitmask enumeration) so they cannot share a
// bug with the library code they check.
#pragma once

#include <random>
#include <vector>

#include "gips/graph.hpp"
#include "gips/matrix.hpp"

namespace fx {

using gips::Edge;
using gips::Graph;
using gips::SymMatrix;
using gips::VertexSet;

inline Graph make_graph(int n, std::vector<Edge> edges) {
    VertexSet vs(n);
    for (int i = 0; i < n; ++i) vs[i] = i + 1;
    return Graph(vs, std::move(edges));
}

inline Graph cycle_graph(int n) {
    std::vector<Edge> e;
    for (int i = 1; i < n; ++i) e.push_back({i, i + 1});
    e.push_back({1, n});
    return make_graph(n, e);
}

inline Graph path_graph(int n) {
    std::vector<Edge> e;
    for (int i = 1; i < n; ++i) e.push_back({i, i + 1});
    return make_graph(n, e);
}

inline Graph complete_graph(int n) {
    std::vector<Edge> e;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) e.push_back({i, j});
    return make_graph(n, e);
}

// Chain of three K4 blocks glued along the edges {3,4} and {5,6}.
inline Graph k4_chain() {
    std::vector<Edge> e;
    auto block = [&](int a, int b, int c, int d) {
        int v[4] = {a, b, c, d};
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) e.push_back(gips::make_edge(v[i], v[j]));
    };
    block(1, 2, 3, 4);
    block(3, 4, 5, 6);
    block(5, 6, 7, 8);
    return make_graph(8, e);
}

// Two 4-cycles sharing the edge {3,4}: 1-2-3-4-1 and 3-5-6-4-3.
inline Graph fused_squares() {
    return make_graph(6, {{1, 2}, {2, 3}, {3, 4}, {1, 4}, {3, 5}, {5, 6}, {4, 6}});
}

// A five cycle whose vertices are not numbered along the cycle:
// 1-2-4-5-3-1. Its minimum-fill extension adds {2,3} and {3,4}.
inline Graph scrambled_five_cycle() {
    return make_graph(5, {{1, 2}, {1, 3}, {2, 4}, {3, 5}, {4, 5}});
}

// Pinned "random" sparse graph: two triangles bridged through a 4-cycle;
// connected, non-chordal, with clique separators.
inline Graph sparse9() {
    return make_graph(9, {{1, 2},
                          {1, 3},
                          {2, 3},
                          {3, 4},
                          {4, 5},
                          {5, 6},
                          {6, 7},
                          {4, 7},
                          {7, 8},
                          {8, 9},
                          {7, 9}});
}

// The ten graphs the marginal-inverse oracle comparison runs over.
inline std::vector<Graph> oracle_fixtures() {
    std::vector<Graph> v;
    for (int n = 4; n <= 10; ++n) v.push_back(cycle_graph(n));
    v.push_back(k4_chain());
    v.push_back(fused_squares());
    v.push_back(sparse9());
    return v;
}

// Random member of the model: free entries uniform, diagonal made
// strictly dominant, hence positive definite; non-edges stay 0.0.
inline SymMatrix random_in_model(const Graph& g, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    SymMatrix k(g.vertices());
    const int d = k.dim();
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
            if (g.has_edge(g.vertices()[i], g.vertices()[j])) k.set(i, j, u(rng));
    for (int i = 0; i < d; ++i) {
        double row = 0.0;
        for (int j = 0; j < d; ++j)
            if (j != i) row += std::abs(k.at(i, j));
        k.set(i, i, row + 0.1 + std::abs(u(rng)));
    }
    return k;
}

// ---- brute-force oracles ----------------------------------------------

inline VertexSet mask_to_set(const Graph& g, unsigned mask) {
    VertexSet s;
    for (size_t i = 0; i < g.vertices().size(); ++i)
        if (mask & (1u << i)) s.push_back(g.vertices()[i]);
    return s;
}

inline bool is_clique_set(const Graph& g, const VertexSet& s) {
    for (size_t i = 0; i < s.size(); ++i)
        for (size_t j = i + 1; j < s.size(); ++j)
            if (!g.has_edge(s[i], s[j])) return false;
    return true;
}

inline std::vector<VertexSet> brute_force_cliques(const Graph& g) {
    const int n = g.order();
    std::vector<VertexSet> out;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        VertexSet s = mask_to_set(g, mask);
        if (!is_clique_set(g, s)) continue;
        bool maximal = true;
        for (int v : g.vertices()) {
            if (gips::vset_contains(s, v)) continue;
            bool adj_all = true;
            for (int u : s) adj_all = adj_all && g.has_edge(u, v);
            if (adj_all) {
                maximal = false;
                break;
            }
        }
        if (maximal) out.push_back(s);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Chordal iff no induced cycle of length >= 4: a vertex subset that
// induces a connected 2-regular subgraph on >= 4 vertices.
inline bool brute_force_chordal(const Graph& g) {
    const int n = g.order();
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        VertexSet s = mask_to_set(g, mask);
        if (s.size() < 4) continue;
        Graph sub = g.induced(s);
        bool two_regular = true;
        for (int v : s) two_regular = two_regular && sub.degree(v) == 2;
        if (two_regular && sub.is_connected()) return false;
    }
    return true;
}

// Maximal induced subgraphs that are connected and contain no complete
// separator (enumerated directly from the definition).
inline std::vector<VertexSet> brute_force_atoms(const Graph& g) {
    const int n = g.order();
    std::vector<VertexSet> primes;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        VertexSet s = mask_to_set(g, mask);
        Graph sub = g.induced(s);
        if (!sub.is_connected()) continue;
        bool prime = true;
        for (unsigned tm = 0; tm < (1u << n) && prime; ++tm) {
            if ((tm & mask) != tm || tm == 0) continue;
            VertexSet t = mask_to_set(g, tm);
            if (t.size() >= s.size()) continue;
            if (!is_clique_set(g, t)) continue;
            Graph rest = g.induced(gips::vset_diff(s, t));
            if (!rest.is_connected()) prime = false;
        }
        if (prime) primes.push_back(s);
    }
    std::vector<VertexSet> out;
    for (const VertexSet& p : primes) {
        bool maximal = true;
        for (const VertexSet& q : primes)
            if (p != q && gips::vset_is_subset(p, q)) {
                maximal = false;
                break;
            }
        if (maximal) out.push_back(p);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Random connected graph on n vertices (edge probability p), for
// oracle cross-checks.
inline Graph random_connected_graph(int n, double p, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (;;) {
        std::vector<Edge> e;
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j)
                if (u(rng) < p) e.push_back({i, j});
        Graph g = make_graph(n, e);
        if (g.is_connected()) return g;
    }
}

}  // namespace fx

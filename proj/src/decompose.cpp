#include "gips/decompose.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "gips/chordal.hpp"

namespace gips {

PrimeDecomposition mp_decompose(const Graph& g) {
    if (g.order() == 0) throw std::invalid_argument("mp_decompose: empty graph");
    if (!g.is_connected()) throw std::invalid_argument("mp_decompose: graph must be connected");

    // Clique-tree view of a minimal triangulation: its separators are the
    // minimal separators of the extension, and the ones inducing cliques
    // of g are exactly g's clique minimal separators. Cutting the tree at
    // those edges and merging everything else yields the maximal prime
    // subgraphs, already arranged as a tree.
    Graph h = minimal_triangulation(g).first;
    ChordalStructure hs = triangulate(h);  // no fill: h is chordal
    const int m = hs.clique_count();

    // parent of clique i = an earlier clique housing its separator
    std::vector<int> parent(m, -1);
    for (int i = 1; i < m; ++i) {
        for (int j = 0; j < i; ++j)
            if (vset_is_subset(hs.separators[i - 1], hs.cliques[j])) {
                parent[i] = j;
                break;
            }
        if (parent[i] < 0) throw std::logic_error("mp_decompose: clique sequence lost housing");
    }

    // merge across tree edges whose separator is not complete in g
    std::vector<int> up(m);
    std::iota(up.begin(), up.end(), 0);
    auto find = [&](int i) {
        while (up[i] != i) {
            up[i] = up[up[i]];
            i = up[i];
        }
        return i;
    };
    for (int i = 1; i < m; ++i)
        if (!g.is_clique(hs.separators[i - 1])) up[find(i)] = find(parent[i]);

    // collect each group's vertices and its first clique in the sequence
    std::map<int, VertexSet> vertices_of;
    std::map<int, int> top_of;
    for (int i = 0; i < m; ++i) {
        int r = find(i);
        auto [it, fresh] = vertices_of.try_emplace(r);
        it->second = fresh ? hs.cliques[i] : vset_union(it->second, hs.cliques[i]);
        if (!top_of.count(r)) top_of[r] = i;  // RIP order: first touch is minimal
    }

    // emit atoms in order of first appearance; each non-initial atom
    // hangs off the tree through the cut edge at its top clique, whose
    // separator is by the junction property the atom's intersection
    // with everything placed before it.
    std::vector<std::pair<int, int>> order;  // (top clique index, group root)
    for (const auto& [r, top] : top_of) order.emplace_back(top, r);
    std::sort(order.begin(), order.end());

    PrimeDecomposition out;
    for (const auto& [top, r] : order) {
        out.parts.push_back(g.induced(vertices_of[r]));
        if (top > 0) out.separators.push_back(hs.separators[top - 1]);
    }
    return out;
}

}  // namespace gips

#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gips/vset.hpp"

namespace gips {

// Unordered edge, normalized so that first < second.
using Edge = std::pair<int, int>;

inline Edge make_edge(int u, int v) {
    return u < v ? Edge{u, v} : Edge{v, u};
}

/// Simple undirected graph over integer vertex labels.
/// Vertices iterate in ascending label order; no self-loops.
class Graph {
public:
    Graph() = default;
    Graph(VertexSet vertices, std::vector<Edge> edges);

    const VertexSet& vertices() const { return vertices_; }
    const std::vector<Edge>& edges() const { return edges_; }
    int order() const { return static_cast<int>(vertices_.size()); }

    bool has_vertex(int v) const { return vset_contains(vertices_, v); }
    bool has_edge(int u, int v) const;
    const VertexSet& neighbors(int v) const;
    int degree(int v) const { return static_cast<int>(neighbors(v).size()); }

    /// Subgraph induced by the given vertex labels.
    Graph induced(const VertexSet& vs) const;
    /// Same vertex set with extra edges added.
    Graph with_edges(const std::vector<Edge>& extra) const;

    bool is_connected() const;
    /// True iff every pair in `vs` is adjacent.
    bool is_clique(const VertexSet& vs) const;
    std::vector<VertexSet> connected_components() const;

    bool operator==(const Graph& other) const {
        return vertices_ == other.vertices_ && edges_ == other.edges_;
    }

private:
    VertexSet vertices_;
    std::vector<Edge> edges_;              // normalized, sorted, unique
    std::map<int, VertexSet> adjacency_;   // sorted neighbor lists
};

/// All maximal cliques (Bron-Kerbosch with pivoting), each sorted
/// ascending, the list sorted lexicographically.
std::vector<VertexSet> maximal_cliques(const Graph& g);

/// Vertices whose neighborhood induces a complete subgraph, ascending.
VertexSet simplicial_vertices(const Graph& g);

// Text format: "p <n>" declares vertices 1..n, then one "e <u> <v>" line
// per edge. Blank lines and lines starting with '#' are ignored.
Graph parse_graph(std::istream& in);
Graph load_graph(const std::string& path);
void save_graph(const Graph& g, std::ostream& out);
void save_graph(const Graph& g, const std::string& path);

}  // namespace gips

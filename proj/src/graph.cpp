#include "gips/graph.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace gips {

Graph::Graph(VertexSet vertices, std::vector<Edge> edges) {
    std::sort(vertices.begin(), vertices.end());
    if (std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end())
        throw std::invalid_argument("graph: duplicate vertex label");
    vertices_ = std::move(vertices);
    for (auto& e : edges) {
        if (e.first == e.second)
            throw std::invalid_argument("graph: self-loop at vertex " + std::to_string(e.first));
        e = make_edge(e.first, e.second);
        if (!has_vertex(e.first) || !has_vertex(e.second))
            throw std::invalid_argument("graph: edge (" + std::to_string(e.first) + "," +
                                        std::to_string(e.second) + ") references unknown vertex");
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    edges_ = std::move(edges);

    for (int v : vertices_) adjacency_[v];  // ensure isolated vertices have an entry
    for (const auto& [u, v] : edges_) {
        adjacency_[u].push_back(v);
        adjacency_[v].push_back(u);
    }
    for (auto& [v, nbrs] : adjacency_) std::sort(nbrs.begin(), nbrs.end());
}

bool Graph::has_edge(int u, int v) const {
    if (u == v) return false;
    auto it = adjacency_.find(u);
    if (it == adjacency_.end()) return false;
    return vset_contains(it->second, v);
}

const VertexSet& Graph::neighbors(int v) const {
    auto it = adjacency_.find(v);
    if (it == adjacency_.end())
        throw std::invalid_argument("graph: unknown vertex " + std::to_string(v));
    return it->second;
}

Graph Graph::induced(const VertexSet& vs) const {
    VertexSet keep = vset_sorted(vs);
    for (int v : keep)
        if (!has_vertex(v))
            throw std::invalid_argument("induced: unknown vertex " + std::to_string(v));
    std::vector<Edge> kept;
    for (const auto& e : edges_)
        if (vset_contains(keep, e.first) && vset_contains(keep, e.second)) kept.push_back(e);
    return Graph(std::move(keep), std::move(kept));
}

Graph Graph::with_edges(const std::vector<Edge>& extra) const {
    std::vector<Edge> all = edges_;
    all.insert(all.end(), extra.begin(), extra.end());
    return Graph(vertices_, std::move(all));
}

std::vector<VertexSet> Graph::connected_components() const {
    std::vector<VertexSet> comps;
    VertexSet seen;
    for (int start : vertices_) {
        if (vset_contains(seen, start)) continue;
        VertexSet comp;
        std::vector<int> stack{start};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            if (vset_contains(comp, v)) continue;
            comp.insert(std::lower_bound(comp.begin(), comp.end(), v), v);
            for (int u : neighbors(v))
                if (!vset_contains(comp, u)) stack.push_back(u);
        }
        seen = vset_union(seen, comp);
        comps.push_back(std::move(comp));
    }
    return comps;
}

bool Graph::is_connected() const {
    if (vertices_.empty()) return true;
    return connected_components().size() == 1;
}

bool Graph::is_clique(const VertexSet& vs) const {
    for (size_t i = 0; i < vs.size(); ++i)
        for (size_t j = i + 1; j < vs.size(); ++j)
            if (!has_edge(vs[i], vs[j])) return false;
    return true;
}

namespace {

// Bron-Kerbosch with pivot chosen to maximize the pivot's neighbour count inside P.
void bron_kerbosch(const Graph& g, VertexSet& r, VertexSet p, VertexSet x,
                   std::vector<VertexSet>& out) {
    if (p.empty() && x.empty()) {
        out.push_back(r);
        return;
    }
    int pivot = -1;
    size_t best = 0;
    bool first = true;
    for (const VertexSet* s : {&p, &x}) {
        for (int u : *s) {
            size_t cnt = vset_intersect(p, g.neighbors(u)).size();
            if (first || cnt > best) {
                pivot = u;
                best = cnt;
                first = false;
            }
        }
    }
    VertexSet candidates = vset_diff(p, g.neighbors(pivot));
    for (int v : candidates) {
        const VertexSet& nb = g.neighbors(v);
        r.push_back(v);
        bron_kerbosch(g, r, vset_intersect(p, nb), vset_intersect(x, nb), out);
        r.pop_back();
        p = vset_diff(p, VertexSet{v});
        x = vset_union(x, VertexSet{v});
    }
}

}  // namespace

std::vector<VertexSet> maximal_cliques(const Graph& g) {
    std::vector<VertexSet> out;
    if (g.order() == 0) return out;
    VertexSet r;
    bron_kerbosch(g, r, g.vertices(), {}, out);
    for (auto& c : out) std::sort(c.begin(), c.end());
    std::sort(out.begin(), out.end());
    return out;
}

VertexSet simplicial_vertices(const Graph& g) {
    VertexSet out;
    for (int v : g.vertices())
        if (g.is_clique(g.neighbors(v))) out.push_back(v);
    return out;
}

Graph parse_graph(std::istream& in) {
    int n = -1;
    std::vector<Edge> edges;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag[0] == '#') continue;
        if (tag == "p") {
            if (n >= 0) throw std::invalid_argument("graph file: duplicate 'p' line");
            if (!(ls >> n) || n < 1)
                throw std::invalid_argument("graph file: bad vertex count on line " +
                                            std::to_string(lineno));
        } else if (tag == "e") {
            int u, v;
            if (n < 0) throw std::invalid_argument("graph file: 'e' before 'p'");
            if (!(ls >> u >> v))
                throw std::invalid_argument("graph file: bad edge on line " + std::to_string(lineno));
            if (u < 1 || u > n || v < 1 || v > n)
                throw std::invalid_argument("graph file: edge endpoint out of range on line " +
                                            std::to_string(lineno));
            edges.push_back(make_edge(u, v));
        } else {
            throw std::invalid_argument("graph file: unknown record '" + tag + "' on line " +
                                        std::to_string(lineno));
        }
    }
    if (n < 0) throw std::invalid_argument("graph file: missing 'p' line");
    VertexSet vs(n);
    for (int i = 0; i < n; ++i) vs[i] = i + 1;
    return Graph(std::move(vs), std::move(edges));
}

Graph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open graph file: " + path);
    return parse_graph(in);
}

void save_graph(const Graph& g, std::ostream& out) {
    // The file format names vertices 1..n implicitly.
    for (int i = 0; i < g.order(); ++i)
        if (g.vertices()[i] != i + 1)
            throw std::invalid_argument("save_graph: vertex labels must be exactly 1..n");
    out << "p " << g.order() << "\n";
    for (const auto& [u, v] : g.edges()) out << "e " << u << " " << v << "\n";
}

void save_graph(const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open for writing: " + path);
    save_graph(g, out);
}

}  // namespace gips

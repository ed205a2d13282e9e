#pragma once

#include <optional>
#include <vector>

#include "gips/graph.hpp"

namespace gips {

/// A chordal extension of a graph together with one perfect sequence of
/// its maximal cliques and the derived elimination data.
///
/// cliques[m] is the (m+1)-th clique of the sequence. separators[m-1] is
/// the intersection of cliques[m] with the union of the earlier cliques,
/// so separators has size M-1. residuals[m] holds the vertices of
/// cliques[m] not seen earlier; for an anchored sequence residuals[0]
/// excludes the anchor, whose vertices are eliminated last. peo is the
/// induced perfect elimination order (first eliminated first): residuals
/// M..1 back to front, descending labels inside each, then the anchor
/// descending.
struct ChordalStructure {
    Graph extension;
    std::vector<Edge> fill_edges;
    std::vector<VertexSet> cliques;
    std::vector<VertexSet> separators;
    std::vector<VertexSet> residuals;
    VertexSet anchor;  // empty for the standard (unanchored) sequence
    std::vector<int> peo;

    int clique_count() const { return static_cast<int>(cliques.size()); }
};

/// Maximum cardinality search. Returns the visit order. Among unvisited
/// vertices of maximal weight, members of `seed` win, then the smallest
/// label. Seeding a clique first is itself a valid MCS tie-break.
std::vector<int> mcs_order(const Graph& g, const VertexSet& seed = {});

/// True iff `order` is a perfect elimination order of g (every vertex
/// simplicial among its successors).
bool is_perfect_elimination_order(const Graph& g, const std::vector<int>& order);

/// Chordality test; on success returns a witnessing perfect elimination
/// order (a maximum cardinality search order with empty fill).
std::optional<std::vector<int>> is_chordal(const Graph& g);

/// Greedy minimum-fill triangulation (ties broken by ascending label)
/// plus a perfect sequence of the extension's maximal cliques. Chordal
/// input comes back unchanged with no fill.
ChordalStructure triangulate(const Graph& g);

/// Re-derives the perfect sequence so that cliques[0] contains `anchor`,
/// with the anchor's vertices eliminated last. Rejects anchors that are
/// not cliques of the extension.
ChordalStructure perfect_sequence_from(const ChordalStructure& cs, const VertexSet& anchor);

/// Minimal triangulation via MCS-M: no proper subset of the returned
/// fill edges triangulates the graph. Second element is the fill.
std::pair<Graph, std::vector<Edge>> minimal_triangulation(const Graph& g);

}  // namespace gips

#pragma once

#include <vector>

#include "gips/graph.hpp"

namespace gips {

/// Decomposition of a connected graph into its maximal prime subgraphs
/// (the unique pieces left when no clique separator remains).
///
/// parts is a D-ordered sequence: each part's intersection with the
/// union of the earlier parts is contained in a single earlier part and
/// induces a clique. separators[m-1] is that intersection for part m,
/// kept as a list because the same separator may occur more than once
/// and the localization formula subtracts it once per occurrence.
struct PrimeDecomposition {
    std::vector<Graph> parts;
    std::vector<VertexSet> separators;

    int part_count() const { return static_cast<int>(parts.size()); }
};

/// Splits g along its clique minimal separators. Those separators are
/// found as the clique-tree separators of a minimal triangulation that
/// stay complete in g; the graph is then recursively cut along each,
/// peeling the lexicographically smallest full component. Rejects
/// disconnected input.
PrimeDecomposition mp_decompose(const Graph& g);

}  // namespace gips

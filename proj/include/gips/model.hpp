#pragma once

#include <vector>

#include "gips/decompose.hpp"
#include "gips/graph.hpp"
#include "gips/matrix.hpp"

namespace gips {

/// A Gaussian graphical model: concentration matrices are positive
/// definite with zeros wherever the graph has no edge. Caches the
/// maximal cliques and the prime decomposition of the (connected) graph.
class ModelSpec {
  public:
    static ModelSpec from_graph(const Graph& g);

    const Graph& graph() const { return graph_; }
    const std::vector<VertexSet>& cliques() const { return cliques_; }
    const PrimeDecomposition& decomposition() const { return decomposition_; }
    int dim() const { return graph_.order(); }

  private:
    ModelSpec() = default;
    Graph graph_;
    std::vector<VertexSet> cliques_;
    PrimeDecomposition decomposition_;
};

/// Sample count, mean and scatter matrix W = sum of centered outer
/// products. The mean is estimated once and plays no further role in
/// the concentration fit.
struct SuffStats {
    int n = 0;
    std::vector<double> mean;
    SymMatrix scatter;

    SuffStats() : scatter(VertexSet{}) {}
    SuffStats(int n_, std::vector<double> mean_, SymMatrix scatter_);

    /// Marginal statistics on a subset of the variables (used for
    /// per-prime-subgraph fits).
    SuffStats restricted(const VertexSet& labels) const;
};

/// Statistics from a data table whose columns correspond to `labels` in
/// order. Two-pass: mean first, then centered scatter.
SuffStats suff_stats_from_samples(const Mat& data, const VertexSet& labels);

/// Scatter supplied directly (e.g. a Wishart draw); mean recorded as 0.
SuffStats suff_stats_from_scatter(int n, const SymMatrix& scatter);

/// A member of the model: symmetric matrix whose off-pattern entries
/// are exactly zero. Construction verifies the pattern bit-for-bit and
/// positive definiteness; fitting code mutates only clique blocks, so
/// structural zeros are never written.
struct Concentration {
    SymMatrix k;

    explicit Concentration(SymMatrix k_) : k(std::move(k_)) {}
    static Concentration checked(const Graph& g, SymMatrix k);
};

/// max over maximal cliques C of the max-norm of n*(K^-1)_CC - W_CC;
/// zero exactly when K solves the likelihood equations.
double likelihood_residual(const SymMatrix& k, const SuffStats& stats,
                           const std::vector<VertexSet>& cliques);

/// Closed-form MLE for a chordal (decomposable) model:
///   K = n * sum_C (W_CC)^-1 [embedded] - n * sum_S (W_SS)^-1 [embedded]
/// over a perfect sequence of cliques, separators counted with
/// multiplicity. Rejects non-chordal graphs and singular margins.
Concentration decomposable_mle(const ModelSpec& spec, const SuffStats& stats);

/// Assembles the whole-graph MLE from per-prime-subgraph MLEs:
///   K = sum_V K_VV [embedded] - n * sum_S (W_SS)^-1 [embedded]
/// where the S run over the D-order separators with multiplicity.
Concentration combine_mp_fits(const std::vector<std::pair<VertexSet, SymMatrix>>& fits,
                              const std::vector<VertexSet>& separators,
                              const SuffStats& stats);

/// Profile log-likelihood at the sample mean, up to an additive
/// constant: (n/2) log det K - (1/2) tr(K W).
double loglik(const SymMatrix& k, const SuffStats& stats);

}  // namespace gips

#include "gips/model.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "gips/chordal.hpp"

namespace gips {

ModelSpec ModelSpec::from_graph(const Graph& g) {
    if (g.order() == 0) throw std::invalid_argument("ModelSpec: empty graph");
    if (!g.is_connected()) throw std::invalid_argument("ModelSpec: graph must be connected");
    ModelSpec spec;
    spec.graph_ = g;
    spec.cliques_ = maximal_cliques(g);
    spec.decomposition_ = mp_decompose(g);
    return spec;
}

SuffStats::SuffStats(int n_, std::vector<double> mean_, SymMatrix scatter_)
    : n(n_), mean(std::move(mean_)), scatter(std::move(scatter_)) {
    if (n < 1) throw std::invalid_argument("SuffStats: sample count must be >= 1");
    if (static_cast<int>(mean.size()) != scatter.dim())
        throw std::invalid_argument("SuffStats: mean length does not match scatter dimension");
}

SuffStats SuffStats::restricted(const VertexSet& labels) const {
    SymMatrix sub(labels);
    std::vector<double> m(labels.size());
    for (size_t i = 0; i < labels.size(); ++i) {
        m[i] = mean[scatter.index_of(labels[i])];
        for (size_t j = i; j < labels.size(); ++j)
            sub.set(static_cast<int>(i), static_cast<int>(j),
                    scatter.at_label(labels[i], labels[j]));
    }
    return SuffStats(n, std::move(m), std::move(sub));
}

SuffStats suff_stats_from_samples(const Mat& data, const VertexSet& labels) {
    if (data.rows() < 1) throw std::invalid_argument("suff_stats_from_samples: empty table");
    if (data.cols() != static_cast<int>(labels.size()))
        throw std::invalid_argument("suff_stats_from_samples: column count does not match labels");

    const int n = data.rows();
    const int d = data.cols();
    std::vector<double> mean(d, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < d; ++j) mean[j] += data(i, j);
    for (int j = 0; j < d; ++j) mean[j] /= n;

    SymMatrix w(labels);
    for (int a = 0; a < d; ++a)
        for (int b = a; b < d; ++b) {
            double acc = 0.0;
            for (int i = 0; i < n; ++i) acc += (data(i, a) - mean[a]) * (data(i, b) - mean[b]);
            w.set(a, b, acc);
        }
    return SuffStats(n, std::move(mean), std::move(w));
}

SuffStats suff_stats_from_scatter(int n, const SymMatrix& scatter) {
    return SuffStats(n, std::vector<double>(scatter.dim(), 0.0), scatter);
}

Concentration Concentration::checked(const Graph& g, SymMatrix k) {
    if (k.labels() != g.vertices())
        throw std::invalid_argument("Concentration: labels do not match the graph");
    const VertexSet& vs = g.vertices();
    for (size_t i = 0; i < vs.size(); ++i)
        for (size_t j = i + 1; j < vs.size(); ++j)
            if (!g.has_edge(vs[i], vs[j]) &&
                k.at(static_cast<int>(i), static_cast<int>(j)) != 0.0)
                throw std::invalid_argument("Concentration: nonzero entry at a non-edge");
    int idx = -1;
    double pivot = 0.0;
    if (!chol_factor(k.to_mat(), nullptr, &idx, &pivot)) throw not_positive_definite(idx, pivot);
    return Concentration(std::move(k));
}

double likelihood_residual(const SymMatrix& k, const SuffStats& stats,
                           const std::vector<VertexSet>& cliques) {
    if (k.labels() != stats.scatter.labels())
        throw std::invalid_argument("likelihood_residual: label mismatch");
    SymMatrix sigma = inverse_pd(k);
    double worst = 0.0;
    for (const VertexSet& c : cliques)
        for (size_t a = 0; a < c.size(); ++a)
            for (size_t b = a; b < c.size(); ++b) {
                double diff = stats.n * sigma.at_label(c[a], c[b]) -
                              stats.scatter.at_label(c[a], c[b]);
                worst = std::max(worst, std::abs(diff));
            }
    return worst;
}

namespace {

// K += coef * inverse(W restricted to `labels`), embedded at the block
// the labels index. Upper triangle only; SymMatrix mirrors the write.
void add_scaled_inverse_block(SymMatrix& k, const SymMatrix& w, const VertexSet& labels,
                              double coef, FlopCount* fc = nullptr) {
    Mat inv = inverse_pd(submatrix(w, labels, labels), fc);
    for (size_t a = 0; a < labels.size(); ++a)
        for (size_t b = a; b < labels.size(); ++b) {
            int i = k.index_of(labels[a]);
            int j = k.index_of(labels[b]);
            k.set(i, j, k.at(i, j) + coef * inv(static_cast<int>(a), static_cast<int>(b)));
        }
}

}  // namespace

Concentration decomposable_mle(const ModelSpec& spec, const SuffStats& stats) {
    if (!is_chordal(spec.graph()))
        throw std::invalid_argument("decomposable_mle: graph is not chordal");
    if (spec.graph().vertices() != stats.scatter.labels())
        throw std::invalid_argument("decomposable_mle: stats do not match the model");

    ChordalStructure cs = triangulate(spec.graph());
    SymMatrix k(spec.graph().vertices());
    for (const VertexSet& c : cs.cliques) add_scaled_inverse_block(k, stats.scatter, c, stats.n);
    for (const VertexSet& s : cs.separators)
        add_scaled_inverse_block(k, stats.scatter, s, -stats.n);
    return Concentration(std::move(k));
}

Concentration combine_mp_fits(const std::vector<std::pair<VertexSet, SymMatrix>>& fits,
                              const std::vector<VertexSet>& separators,
                              const SuffStats& stats) {
    SymMatrix k(stats.scatter.labels());
    for (const auto& [vs, kvv] : fits) {
        if (kvv.labels() != vs)
            throw std::invalid_argument("combine_mp_fits: fit labels do not match its vertex set");
        for (size_t a = 0; a < vs.size(); ++a)
            for (size_t b = a; b < vs.size(); ++b) {
                int i = k.index_of(vs[a]);
                int j = k.index_of(vs[b]);
                k.set(i, j, k.at(i, j) + kvv.at(static_cast<int>(a), static_cast<int>(b)));
            }
    }
    for (const VertexSet& s : separators) add_scaled_inverse_block(k, stats.scatter, s, -stats.n);
    return Concentration(std::move(k));
}

double loglik(const SymMatrix& k, const SuffStats& stats) {
    int idx = -1;
    double pivot = 0.0;
    auto chol = chol_factor(k.to_mat(), nullptr, &idx, &pivot);
    if (!chol) throw not_positive_definite(idx, pivot);
    double logdet = 0.0;
    for (int i = 0; i < k.dim(); ++i) logdet += 2.0 * std::log((*chol)(i, i));
    double trace = 0.0;
    for (int i = 0; i < k.dim(); ++i)
        for (int j = 0; j < k.dim(); ++j) trace += k.at(i, j) * stats.scatter.at(j, i);
    return 0.5 * stats.n * logdet - 0.5 * trace;
}

}  // namespace gips

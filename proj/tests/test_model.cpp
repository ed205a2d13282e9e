#include <cmath>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "gips/ips.hpp"
#include "gips/model.hpp"
#include "gips/wishart.hpp"

using namespace gips;

namespace {

// relative max-norm discrepancy of the clique margin n*(K^-1)_CC = W_CC
double margin_gap(const SymMatrix& k, const SuffStats& stats, const VertexSet& c) {
    SymMatrix sigma = inverse_pd(k);
    double gap = 0.0;
    for (int u : c)
        for (int v : c)
            gap = std::max(gap, std::abs(stats.n * sigma.at_label(u, v) - stats.scatter.at_label(u, v)));
    return gap / stats.scatter.max_abs();
}

}  // namespace

TEST_CASE("model spec caches cliques and decomposition") {
    ModelSpec spec = ModelSpec::from_graph(fx::k4_chain());
    CHECK(spec.dim() == 8);
    CHECK(spec.cliques().size() == 3);
    CHECK(spec.decomposition().part_count() == 3);

    Graph two({1, 2, 3}, {{1, 2}});
    CHECK_THROWS_AS(ModelSpec::from_graph(two), std::invalid_argument);  // disconnected
}

TEST_CASE("sufficient statistics from samples") {
    // two points at (0,0) and (2,2): mean (1,1), scatter [[2,2],[2,2]]
    Mat data(2, 2);
    data(1, 0) = data(1, 1) = 2.0;
    SuffStats s = suff_stats_from_samples(data, {1, 2});
    CHECK(s.n == 2);
    CHECK(s.mean == std::vector<double>{1.0, 1.0});
    CHECK(s.scatter.at_label(1, 1) == 2.0);
    CHECK(s.scatter.at_label(1, 2) == 2.0);
    CHECK(s.scatter.at_label(2, 2) == 2.0);

    // random table against the textbook identity W = sum yy' - n ybar ybar'
    std::mt19937_64 rng(7201);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    Mat table(20, 4);
    for (int i = 0; i < 20; ++i)
        for (int j = 0; j < 4; ++j) table(i, j) = u(rng);
    SuffStats st = suff_stats_from_samples(table, {1, 2, 3, 4});
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            double raw = 0.0, ma = 0.0, mb = 0.0;
            for (int i = 0; i < 20; ++i) {
                raw += table(i, a) * table(i, b);
                ma += table(i, a) / 20.0;
                mb += table(i, b) / 20.0;
            }
            CHECK(st.scatter.at(a, b) == doctest::Approx(raw - 20.0 * ma * mb).epsilon(1e-10));
        }

    CHECK_THROWS_AS(suff_stats_from_samples(Mat(0, 2), {1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(suff_stats_from_samples(Mat(3, 2), {1, 2, 3}), std::invalid_argument);
}

TEST_CASE("scatter-only statistics and restriction") {
    SymMatrix w = wishart_sample(5, 8, 42);
    SuffStats s = suff_stats_from_scatter(8, w);
    CHECK(s.n == 8);
    CHECK(s.mean == std::vector<double>(5, 0.0));
    CHECK(max_abs_diff(s.scatter.to_mat(), w.to_mat()) == 0.0);
    CHECK_THROWS_AS(suff_stats_from_scatter(0, w), std::invalid_argument);

    SuffStats r = s.restricted({2, 4, 5});
    CHECK(r.n == 8);
    CHECK(r.scatter.labels() == VertexSet{2, 4, 5});
    CHECK(r.scatter.at_label(2, 4) == w.at_label(2, 4));
    CHECK(r.mean.size() == 3);
}

TEST_CASE("pattern membership is checked bit for bit") {
    Graph g = fx::cycle_graph(4);
    SymMatrix ok = SymMatrix::identity(g.vertices());
    ok.set_label(1, 2, 0.3);
    CHECK_NOTHROW(Concentration::checked(g, ok));

    SymMatrix off = ok;
    off.set_label(1, 3, 1e-300);  // structurally zero position
    CHECK_THROWS_AS(Concentration::checked(g, off), std::invalid_argument);

    SymMatrix indef = SymMatrix::identity(g.vertices());
    indef.set_label(1, 2, 2.0);  // breaks positive definiteness
    CHECK_THROWS_AS(Concentration::checked(g, indef), not_positive_definite);

    SymMatrix wrong = SymMatrix::identity({1, 2, 3});
    CHECK_THROWS_AS(Concentration::checked(g, wrong), std::invalid_argument);
}

TEST_CASE("likelihood residual") {
    SymMatrix w = wishart_sample(4, 9, 601);
    SuffStats stats = suff_stats_from_scatter(9, w);
    ModelSpec full = ModelSpec::from_graph(fx::complete_graph(4));

    // the saturated MLE n*W^-1 has zero residual
    SymMatrix khat = inverse_pd(w);
    Mat scaled = 9.0 * khat.to_mat();
    SymMatrix k = SymMatrix::from_mat(scaled, w.labels());
    CHECK(likelihood_residual(k, stats, full.cliques()) <= 1e-9 * w.max_abs());

    // the identity is generically far from solving the equations
    CHECK(likelihood_residual(SymMatrix::identity(w.labels()), stats, full.cliques()) > 1.0);
}

TEST_CASE("closed-form fit on a complete graph is n W^-1") {
    SymMatrix w = wishart_sample(5, 12, 602);
    SuffStats stats = suff_stats_from_scatter(12, w);
    ModelSpec spec = ModelSpec::from_graph(fx::complete_graph(5));
    Concentration khat = decomposable_mle(spec, stats);
    Mat oracle = 12.0 * inverse_pd(w.to_mat());
    CHECK(max_abs_diff(khat.k.to_mat(), oracle) <= 1e-10 * oracle.max_abs());
}

TEST_CASE("closed-form fit solves the likelihood equations") {
    std::vector<Graph> chordal = {fx::k4_chain(), fx::path_graph(6), fx::complete_graph(4),
                                  fx::make_graph(3, {{1, 2}, {2, 3}})};
    std::uint64_t seed = 603;
    for (const Graph& g : chordal) {
        ModelSpec spec = ModelSpec::from_graph(g);
        SymMatrix w = wishart_sample(g.order(), 2 * g.order(), seed++);
        SuffStats stats = suff_stats_from_scatter(2 * g.order(), w);
        Concentration khat = decomposable_mle(spec, stats);

        CHECK(likelihood_residual(khat.k, stats, spec.cliques()) <= 1e-8 * w.max_abs());
        for (const VertexSet& c : spec.cliques()) CHECK(margin_gap(khat.k, stats, c) <= 1e-9);

        // structural zeros are written by construction, never computed
        for (size_t i = 0; i < g.vertices().size(); ++i)
            for (size_t j = i + 1; j < g.vertices().size(); ++j)
                if (!g.has_edge(g.vertices()[i], g.vertices()[j]))
                    CHECK(khat.k.at((int)i, (int)j) == 0.0);
        CHECK(is_positive_definite(khat.k));
    }

    ModelSpec cyc = ModelSpec::from_graph(fx::cycle_graph(5));
    SuffStats stats = suff_stats_from_scatter(5, wishart_sample(5, 5, 604));
    CHECK_THROWS_AS(decomposable_mle(cyc, stats), std::invalid_argument);
}

TEST_CASE("two-clique chain fit matches the hand-assembled formula") {
    // cliques {1,2} and {2,3}, separator {2}:
    // K = n (W_{12})^-1 (+) n (W_{23})^-1 - n / w_22 at (2,2)
    Graph chain = fx::make_graph(3, {{1, 2}, {2, 3}});
    SymMatrix w = wishart_sample(3, 7, 605);
    SuffStats stats = suff_stats_from_scatter(7, w);
    Concentration khat = decomposable_mle(ModelSpec::from_graph(chain), stats);

    Mat expect = embed(7.0 * inverse_pd(submatrix(w, {1, 2}, {1, 2})), {1, 2}, {1, 2}, w.labels()) +
                 embed(7.0 * inverse_pd(submatrix(w, {2, 3}, {2, 3})), {2, 3}, {2, 3}, w.labels());
    expect(1, 1) -= 7.0 / w.at_label(2, 2);
    CHECK(max_abs_diff(khat.k.to_mat(), expect) <= 1e-12 * expect.max_abs());
    CHECK(khat.k.at_label(1, 3) == 0.0);
}

TEST_CASE("combining prime-part fits reproduces the closed form") {
    std::uint64_t seed = 606;
    for (const Graph& g : {fx::k4_chain(), fx::path_graph(6)}) {
        ModelSpec spec = ModelSpec::from_graph(g);
        SymMatrix w = wishart_sample(g.order(), 2 * g.order(), seed++);
        SuffStats stats = suff_stats_from_scatter(2 * g.order(), w);

        std::vector<std::pair<VertexSet, SymMatrix>> fits;
        for (const Graph& part : spec.decomposition().parts) {
            SuffStats ps = stats.restricted(part.vertices());
            fits.emplace_back(part.vertices(),
                              decomposable_mle(ModelSpec::from_graph(part), ps).k);
        }
        Concentration combined = combine_mp_fits(fits, spec.decomposition().separators, stats);
        Concentration whole = decomposable_mle(spec, stats);
        CHECK(max_abs_diff(combined.k.to_mat(), whole.k.to_mat()) <= 1e-8 * whole.k.max_abs());

        // a single prime part passes through unchanged
        Concentration same = combine_mp_fits({{g.vertices(), whole.k}}, {}, stats);
        CHECK(max_abs_diff(same.k.to_mat(), whole.k.to_mat()) == 0.0);
    }
}

TEST_CASE("combination is independent of the part order") {
    ModelSpec spec = ModelSpec::from_graph(fx::k4_chain());
    SymMatrix w = wishart_sample(8, 16, 607);
    SuffStats stats = suff_stats_from_scatter(16, w);

    std::vector<std::pair<VertexSet, SymMatrix>> fits;
    for (const Graph& part : spec.decomposition().parts)
        fits.emplace_back(part.vertices(),
                          decomposable_mle(ModelSpec::from_graph(part),
                                           stats.restricted(part.vertices()))
                              .k);
    Concentration forward = combine_mp_fits(fits, spec.decomposition().separators, stats);

    // the reversed sequence is also a valid D-order with the same
    // separator multiset, so the assembled matrix is the same
    std::vector<std::pair<VertexSet, SymMatrix>> rev(fits.rbegin(), fits.rend());
    std::vector<VertexSet> seps(spec.decomposition().separators.rbegin(),
                                spec.decomposition().separators.rend());
    Concentration backward = combine_mp_fits(rev, seps, stats);
    CHECK(max_abs_diff(forward.k.to_mat(), backward.k.to_mat()) <= 1e-12 * forward.k.max_abs());
}

TEST_CASE("log-likelihood values") {
    SymMatrix zero({1, 2});
    SuffStats empty = suff_stats_from_scatter(3, zero);
    CHECK(loglik(SymMatrix::identity({1, 2}), empty) == 0.0);

    // K = diag(2,2), W = I, n = 3: (3/2) log 4 - (1/2) tr(diag(2,2))
    SymMatrix k = SymMatrix::identity({1, 2});
    k.set(0, 0, 2.0);
    k.set(1, 1, 2.0);
    SuffStats stats = suff_stats_from_scatter(3, SymMatrix::identity({1, 2}));
    CHECK(loglik(k, stats) == doctest::Approx(3.0 * std::log(2.0) - 2.0).epsilon(1e-14));

    CHECK_THROWS_AS(loglik(SymMatrix({1, 2}), stats), not_positive_definite);
}

TEST_CASE("the fit maximizes the likelihood over the model") {
    std::mt19937_64 rng(7202);
    std::uint64_t seed = 608;
    for (const Graph& g : {fx::fused_squares(), fx::cycle_graph(5), fx::k4_chain()}) {
        ModelSpec spec = ModelSpec::from_graph(g);
        int n = 2 * g.order();
        SuffStats stats = suff_stats_from_scatter(n, wishart_sample(g.order(), n, seed++));
        IpsConfig cfg;
        cfg.tol = 1e-10;
        FitResult res = fit(spec, stats, cfg);
        REQUIRE(res.converged);
        double best = loglik(res.k_hat.k, stats);
        for (int rep = 0; rep < 100; ++rep) {
            SymMatrix other = fx::random_in_model(g, rng);
            CHECK(loglik(other, stats) <= best + 1e-9 * std::abs(best));
        }
    }
}

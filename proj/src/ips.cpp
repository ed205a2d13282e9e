#include "gips/ips.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>
#include <stdexcept>
#include <utility>

namespace gips {

namespace {

// n * (W_CC)^-1; a not-PD signal is re-labeled with the offending vertex.
Mat scaled_scatter_inverse(const SuffStats& stats, const VertexSet& c, FlopCount* fc) {
    Mat w_cc = submatrix(stats.scatter, c, c);
    Mat inv;
    try {
        inv = inverse_pd(w_cc, fc);
    } catch (const not_positive_definite& e) {
        int label = (e.index() >= 0 && e.index() < static_cast<int>(c.size())) ? c[e.index()]
                                                                               : e.index();
        throw not_positive_definite(label, e.pivot());
    }
    const int m = static_cast<int>(c.size());
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) inv(i, j) *= stats.n;
    if (fc) fc->mults += static_cast<std::uint64_t>(m) * m;
    return inv;
}

void check_clique_of(const SymMatrix& k, const VertexSet& c, const char* who) {
    for (int v : c)
        if (!k.has_label(v)) throw std::invalid_argument(std::string(who) + ": unknown vertex in clique");
}

// K_CC <- scaled_winv + K_CD (K_DD)^-1 K_DC, in place.
void direct_update_inplace(SymMatrix& k, const VertexSet& c, const Mat& scaled_winv,
                           FlopCount* fc) {
    const VertexSet d = vset_diff(k.labels(), c);
    const int nc = static_cast<int>(c.size());
    if (d.empty()) {
        for (int a = 0; a < nc; ++a)
            for (int b = a; b < nc; ++b) k.set_label(c[a], c[b], scaled_winv(a, b));
        return;
    }
    Mat kdd = submatrix(k, d, d);
    Mat kdc = submatrix(k, d, c);
    int fail = -1;
    double pivot = 0.0;
    auto lower = chol_factor(kdd, fc, &fail, &pivot);
    if (!lower) throw not_positive_definite(fail >= 0 ? d[fail] : fail, pivot);
    forward_solve_inplace(*lower, kdc, fc);
    Mat corr = crossprod(kdc, fc);
    for (int a = 0; a < nc; ++a)
        for (int b = a; b < nc; ++b) k.set_label(c[a], c[b], scaled_winv(a, b) + corr(a, b));
    if (fc) fc->adds += static_cast<std::uint64_t>(nc) * nc;
}

// K_CC <- scaled_winv + K_CC - kstar where kstar = ((K^-1)_CC)^-1.
void combine_update_inplace(SymMatrix& k, const std::vector<int>& c_model, const Mat& scaled_winv,
                            const Mat& kstar, FlopCount* fc) {
    const int nc = static_cast<int>(c_model.size());
    for (int a = 0; a < nc; ++a)
        for (int b = a; b < nc; ++b) {
            int i = c_model[a], j = c_model[b];
            k.set(i, j, scaled_winv(a, b) + k.at(i, j) - kstar(a, b));
        }
    if (fc) {
        fc->adds += static_cast<std::uint64_t>(nc) * nc;
        fc->subs += static_cast<std::uint64_t>(nc) * nc;
    }
}

std::vector<int> model_indices(const SymMatrix& reference, const VertexSet& c) {
    std::vector<int> idx(c.size());
    for (size_t i = 0; i < c.size(); ++i) idx[i] = reference.index_of(c[i]);
    return idx;
}

void localized_update_inplace(SymMatrix& k, const CliquePlan& plan, FlopCount* fc,
                              std::vector<double>* ws) {
    Mat kstar = localized_marginal_inverse(k, plan, fc, ws);
    combine_update_inplace(k, plan.c_model, plan.w_cc_inv_scaled, kstar, fc);
}

}  // namespace

Concentration direct_step(const Concentration& k, const SuffStats& stats, const VertexSet& c,
                          FlopCount* fc) {
    if (k.k.labels() != stats.scatter.labels())
        throw std::invalid_argument("direct_step: matrix/stats label mismatch");
    check_clique_of(k.k, c, "direct_step");
    Concentration out = k;
    Mat winv = scaled_scatter_inverse(stats, c, fc);
    direct_update_inplace(out.k, c, winv, fc);
    return out;
}

Concentration direct_step_rewritten(const Concentration& k, const SuffStats& stats,
                                    const VertexSet& c, FlopCount* fc) {
    if (k.k.labels() != stats.scatter.labels())
        throw std::invalid_argument("direct_step_rewritten: matrix/stats label mismatch");
    check_clique_of(k.k, c, "direct_step_rewritten");
    Concentration out = k;
    Mat winv = scaled_scatter_inverse(stats, c, fc);
    Mat kstar = schur_inverse_block(out.k, c, fc);
    combine_update_inplace(out.k, model_indices(out.k, c), winv, kstar, fc);
    return out;
}

CliquePlan build_clique_plan(const ChordalStructure& cs, const VertexSet& c,
                             const SuffStats& stats) {
    CliquePlan plan;
    plan.clique = c;
    plan.anchored = perfect_sequence_from(cs, c);
    plan.labels = stats.scatter.labels();

    std::set<int> touched;
    for (const VertexSet& cl : plan.anchored.cliques) touched.insert(cl.begin(), cl.end());
    plan.touched.assign(touched.begin(), touched.end());
    plan.local_dim = static_cast<int>(plan.touched.size());
    auto local = [&](int v) {
        return static_cast<int>(std::lower_bound(plan.touched.begin(), plan.touched.end(), v) -
                                plan.touched.begin());
    };

    std::set<std::pair<int, int>> pairs;
    for (const VertexSet& cl : plan.anchored.cliques)
        for (size_t a = 0; a < cl.size(); ++a)
            for (size_t b = a; b < cl.size(); ++b) pairs.insert({local(cl[a]), local(cl[b])});
    for (auto [li, lj] : pairs)
        plan.loads.push_back({li, lj, stats.scatter.index_of(plan.touched[li]),
                              stats.scatter.index_of(plan.touched[lj])});

    // Back of the sequence first; within a residual, descending labels.
    // After a stage, the active clique has shrunk to its separator.
    for (int m = plan.anchored.clique_count() - 1; m >= 0; --m) {
        VertexSet remnant = plan.anchored.cliques[m];
        const VertexSet& residual = plan.anchored.residuals[m];
        for (auto it = residual.rbegin(); it != residual.rend(); ++it) {
            int delta = *it;
            remnant = vset_diff(remnant, VertexSet{delta});
            ScheduleStep st;
            st.m = m + 1;
            st.delta = local(delta);
            st.delta_label = delta;
            st.q.reserve(remnant.size());
            for (int u : remnant) st.q.push_back(local(u));
            plan.schedule.push_back(std::move(st));
        }
    }

    plan.w_cc_inv_scaled = scaled_scatter_inverse(stats, c, nullptr);
    plan.c_local.reserve(c.size());
    for (int v : c) plan.c_local.push_back(local(v));
    plan.c_model = model_indices(stats.scatter, c);
    return plan;
}

Mat localized_marginal_inverse(const SymMatrix& k, const CliquePlan& plan, FlopCount* fc,
                               std::vector<double>* workspace) {
    if (k.labels() != plan.labels)
        throw std::invalid_argument("localized_marginal_inverse: matrix does not match plan");

    std::vector<double> own;
    std::vector<double>& ws = workspace ? *workspace : own;
    const int stride = plan.local_dim;
    if (ws.size() < static_cast<size_t>(stride) * stride)
        ws.resize(static_cast<size_t>(stride) * stride);

    for (const CliquePlan::Load& ld : plan.loads) {
        double v = k.at(ld.mi, ld.mj);
        ws[static_cast<size_t>(ld.li) * stride + ld.lj] = v;
        ws[static_cast<size_t>(ld.lj) * stride + ld.li] = v;
    }

    std::vector<double> col, scaled;
    FlopCount counted;
    for (const ScheduleStep& st : plan.schedule) {
        const double pivot = ws[static_cast<size_t>(st.delta) * stride + st.delta];
        if (pivot <= 0.0) throw not_positive_definite(st.delta_label, pivot);
        const int q = static_cast<int>(st.q.size());
        col.resize(q);
        scaled.resize(q);
        for (int i = 0; i < q; ++i) col[i] = ws[static_cast<size_t>(st.q[i]) * stride + st.delta];
        for (int i = 0; i < q; ++i) scaled[i] = col[i] / pivot;
        for (int a = 0; a < q; ++a) {
            double* row = &ws[static_cast<size_t>(st.q[a]) * stride];
            for (int b = a; b < q; ++b) {
                double v = row[st.q[b]] - scaled[a] * col[b];
                row[st.q[b]] = v;
                ws[static_cast<size_t>(st.q[b]) * stride + st.q[a]] = v;
            }
        }
        counted.divs += q;
        counted.mults += static_cast<std::uint64_t>(q) * q;
        counted.subs += static_cast<std::uint64_t>(q) * q;
    }
    if (fc) *fc += counted;

    const int nc = static_cast<int>(plan.c_local.size());
    Mat out(nc, nc);
    for (int a = 0; a < nc; ++a)
        for (int b = 0; b < nc; ++b)
            out(a, b) = ws[static_cast<size_t>(plan.c_local[a]) * stride + plan.c_local[b]];
    return out;
}

Concentration localized_step(const Concentration& k, const SuffStats& stats,
                             const CliquePlan& plan, FlopCount* fc) {
    if (stats.scatter.labels() != plan.labels)
        throw std::invalid_argument("localized_step: stats do not match plan");
    Concentration out = k;
    localized_update_inplace(out.k, plan, fc, nullptr);
    return out;
}

FlopPrediction flop_report(const CliquePlan& plan) {
    FlopPrediction p;
    for (const ScheduleStep& st : plan.schedule) {
        const std::uint64_t q = st.q.size();
        p.by_sum.divs += q;
        p.by_sum.mults += q * q;
        p.by_sum.subs += q * q;
    }
    for (int m = 0; m < plan.anchored.clique_count(); ++m) {
        const std::int64_t c = static_cast<std::int64_t>(plan.anchored.cliques[m].size());
        const std::int64_t r = static_cast<std::int64_t>(plan.anchored.residuals[m].size());
        const std::int64_t sq = r * c * c - c * r * (r + 1) + r * (r + 1) * (2 * r + 1) / 6;
        const std::int64_t lin = r * c - r * (r + 1) / 2;
        p.by_formula.mults += sq;
        p.by_formula.subs += sq;
        p.by_formula.divs += lin;
    }
    return p;
}

namespace {

struct PieceResult {
    SymMatrix k;
    int sweeps = 0;
    double change = 0.0;
    bool converged = true;
};

void check_sample_size(int n, const std::vector<VertexSet>& extension_cliques) {
    size_t biggest = 0;
    for (const VertexSet& c : extension_cliques) biggest = std::max(biggest, c.size());
    if (n < static_cast<int>(biggest))
        throw std::invalid_argument("fit: sample count " + std::to_string(n) +
                                    " is below the largest extension clique size " +
                                    std::to_string(biggest));
}

SymMatrix restrict_to(const SymMatrix& k, const VertexSet& labels) {
    SymMatrix out(labels);
    for (size_t i = 0; i < labels.size(); ++i)
        for (size_t j = i; j < labels.size(); ++j)
            out.set(static_cast<int>(i), static_cast<int>(j), k.at_label(labels[i], labels[j]));
    return out;
}

PieceResult run_ips(const Graph& part, const SuffStats& sp, const SymMatrix& k0,
                    const IpsConfig& cfg, FlopCount& flops, int& steps,
                    double& update_seconds) {
    ChordalStructure cs = triangulate(part);
    check_sample_size(sp.n, cs.cliques);
    const std::vector<VertexSet> cliques = maximal_cliques(part);

    std::vector<CliquePlan> plans;
    std::vector<Mat> winvs;
    if (cfg.mode == StepMode::localized) {
        plans.reserve(cliques.size());
        for (const VertexSet& c : cliques) plans.push_back(build_clique_plan(cs, c, sp));
    } else {
        winvs.reserve(cliques.size());
        for (const VertexSet& c : cliques) winvs.push_back(scaled_scatter_inverse(sp, c, nullptr));
    }

    PieceResult piece{k0, 0, 0.0, false};
    SymMatrix& k = piece.k;
    SymMatrix prev = k;
    std::vector<double> ws;
    using clock = std::chrono::steady_clock;

    for (int t = 1; t <= cfg.max_sweeps; ++t) {
        for (size_t i = 0; i < cliques.size(); ++i) {
            auto t0 = clock::now();
            if (cfg.mode == StepMode::localized)
                localized_update_inplace(k, plans[i], &flops, &ws);
            else
                direct_update_inplace(k, cliques[i], winvs[i], &flops);
            update_seconds += std::chrono::duration<double>(clock::now() - t0).count();
            ++steps;
            if (cfg.observer) cfg.observer(k, t, cliques[i]);
        }
        double change = 0.0;
        for (int a = 0; a < k.dim(); ++a)
            for (int b = a; b < k.dim(); ++b) {
                double d = std::abs(k.at(a, b) - prev.at(a, b));
                change += (a == b) ? d : 2.0 * d;
            }
        piece.sweeps = t;
        piece.change = change;
        if (change <= cfg.tol) {
            piece.converged = true;
            break;
        }
        prev = k;
    }
    return piece;
}

}  // namespace

FitResult fit(const ModelSpec& spec, const SuffStats& stats, const IpsConfig& cfg) {
    if (stats.scatter.labels() != spec.graph().vertices())
        throw std::invalid_argument("fit: stats do not match the model");
    if (cfg.max_sweeps < 1) throw std::invalid_argument("fit: max_sweeps must be >= 1");
    if (!(cfg.tol > 0.0)) throw std::invalid_argument("fit: tol must be > 0");

    SymMatrix k0 = cfg.initial ? *cfg.initial : SymMatrix::identity(spec.graph().vertices());
    if (cfg.initial) Concentration::checked(spec.graph(), k0);  // must lie in the model

    FlopCount flops;
    int steps = 0;
    double update_seconds = 0.0;

    if (cfg.use_closed_form && is_chordal(spec.graph())) {
        check_sample_size(stats.n, spec.cliques());
        Concentration khat = decomposable_mle(spec, stats);
        SymMatrix sigma = inverse_pd(khat.k);
        return FitResult{std::move(khat), std::move(sigma), 0, 0.0, true, flops, 0, 0.0};
    }

    std::vector<Graph> pieces;
    std::vector<VertexSet> separators;
    if (cfg.use_decomposition) {
        pieces = spec.decomposition().parts;
        separators = spec.decomposition().separators;
    } else {
        pieces = {spec.graph()};
    }

    std::vector<std::pair<VertexSet, SymMatrix>> part_fits;
    int sweeps = 0;
    double final_change = 0.0;
    bool converged = true;

    for (const Graph& part : pieces) {
        const bool whole = part.vertices() == spec.graph().vertices();
        SuffStats sp = whole ? stats : stats.restricted(part.vertices());
        if (cfg.use_closed_form && is_chordal(part)) {
            check_sample_size(sp.n, maximal_cliques(part));
            Concentration kp = decomposable_mle(ModelSpec::from_graph(part), sp);
            part_fits.emplace_back(part.vertices(), std::move(kp.k));
            continue;
        }
        SymMatrix init = whole ? k0 : restrict_to(k0, part.vertices());
        PieceResult piece = run_ips(part, sp, init, cfg, flops, steps, update_seconds);
        sweeps += piece.sweeps;
        final_change = std::max(final_change, piece.change);
        converged = converged && piece.converged;
        part_fits.emplace_back(part.vertices(), std::move(piece.k));
    }

    Concentration khat = (part_fits.size() == 1 && part_fits[0].first == spec.graph().vertices())
                             ? Concentration(std::move(part_fits[0].second))
                             : combine_mp_fits(part_fits, separators, stats);
    SymMatrix sigma = inverse_pd(khat.k);
    return FitResult{std::move(khat),
                     std::move(sigma),
                     sweeps,
                     final_change,
                     converged,
                     flops,
                     steps,
                     steps > 0 ? update_seconds / steps : 0.0};
}

}  // namespace gips

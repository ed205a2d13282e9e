#include "gips/bench.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

#include "gips/wishart.hpp"

namespace gips {

ModelSpec cycle_model(int dim) {
    if (dim < 3) throw std::invalid_argument("cycle_model: dim must be >= 3");
    VertexSet vs(dim);
    for (int i = 0; i < dim; ++i) vs[i] = i + 1;
    std::vector<Edge> edges;
    edges.reserve(dim);
    for (int i = 1; i < dim; ++i) edges.push_back({i, i + 1});
    edges.push_back({1, dim});
    return ModelSpec::from_graph(Graph(vs, edges));
}

const char* mode_name(StepMode m) { return m == StepMode::direct ? "direct" : "localized"; }

StepMode mode_from_name(const std::string& name) {
    if (name == "direct") return StepMode::direct;
    if (name == "localized") return StepMode::localized;
    throw std::invalid_argument("unknown mode '" + name + "' (expected direct or localized)");
}

namespace {

std::uint64_t replication_seed(const BenchSpec& spec, int dim, int rep) {
    return spec.seed * 1000003ull + static_cast<std::uint64_t>(dim) * 10007ull +
           static_cast<std::uint64_t>(rep);
}

struct CellAccum {
    double step_seconds = 0.0;
    double flops_mult = 0.0, flops_div = 0.0, flops_sub = 0.0;
    double sweeps = 0.0;
    int converged = 0;
    int ok = 0;
    int failures = 0;
};

}  // namespace

std::vector<BenchRecord> run_benchmark(const BenchSpec& spec) {
    if (spec.dims.empty()) throw std::invalid_argument("run_benchmark: no dims given");
    if (spec.replications < 1)
        throw std::invalid_argument("run_benchmark: replications must be >= 1");
    if (spec.modes.empty()) throw std::invalid_argument("run_benchmark: no modes given");
    for (int dim : spec.dims) {
        int dof = spec.dof > 0 ? spec.dof : dim;
        if (dof < dim)
            throw std::invalid_argument("run_benchmark: dof must be >= dim for a PD scatter");
    }

    std::vector<BenchRecord> records;
    for (int dim : spec.dims) {
        const int dof = spec.dof > 0 ? spec.dof : dim;
        ModelSpec model = cycle_model(dim);
        std::vector<CellAccum> cells(spec.modes.size());

        for (int rep = 0; rep < spec.replications; ++rep) {
            SymMatrix w = wishart_sample(dim, dof, replication_seed(spec, dim, rep));
            SuffStats stats = suff_stats_from_scatter(dof, w);
            for (size_t mi = 0; mi < spec.modes.size(); ++mi) {
                IpsConfig cfg;
                cfg.mode = spec.modes[mi];
                cfg.max_sweeps = spec.max_sweeps;
                cfg.tol = spec.tol;
                CellAccum& cell = cells[mi];
                try {
                    FitResult res = fit(model, stats, cfg);
                    cell.step_seconds += res.wall_time_per_step;
                    if (res.steps > 0) {
                        cell.flops_mult += double(res.flops.mults) / res.steps;
                        cell.flops_div += double(res.flops.divs) / res.steps;
                        cell.flops_sub += double(res.flops.subs) / res.steps;
                    }
                    cell.sweeps += res.sweeps;
                    if (res.converged) ++cell.converged;
                    ++cell.ok;
                } catch (const not_positive_definite&) {
                    ++cell.failures;
                }
            }
        }

        for (size_t mi = 0; mi < spec.modes.size(); ++mi) {
            const CellAccum& cell = cells[mi];
            BenchRecord rec;
            rec.dim = dim;
            rec.mode = spec.modes[mi];
            rec.reps = spec.replications;
            rec.failures = cell.failures;
            rec.converged_fraction = double(cell.converged) / spec.replications;
            if (cell.ok > 0) {
                rec.mean_step_seconds = cell.step_seconds / cell.ok;
                rec.mean_step_flops_mult = cell.flops_mult / cell.ok;
                rec.mean_step_flops_div = cell.flops_div / cell.ok;
                rec.mean_step_flops_sub = cell.flops_sub / cell.ok;
                rec.mean_sweeps = cell.sweeps / cell.ok;
            }
            records.push_back(rec);
        }
    }
    return records;
}

std::vector<ProbeRecord> inverse_timing_probe(const std::vector<int>& dims, std::uint64_t seed,
                                              int reps) {
    if (reps < 1) throw std::invalid_argument("inverse_timing_probe: reps must be >= 1");
    using clock = std::chrono::steady_clock;
    std::vector<ProbeRecord> out;
    for (int dim : dims) {
        Mat w = wishart_sample(dim, dim, seed + dim).to_mat();
        std::vector<double> times(reps);
        for (int r = 0; r < reps; ++r) {
            auto t0 = clock::now();
            Mat inv = inverse_pd(w);
            times[r] = std::chrono::duration<double>(clock::now() - t0).count();
            // Fold the result back in so the inversion cannot be elided.
            w(0, 0) += 0.0 * inv(0, 0);
        }
        std::sort(times.begin(), times.end());
        out.push_back({dim, times[reps / 2]});
    }
    return out;
}

}  // namespace gips

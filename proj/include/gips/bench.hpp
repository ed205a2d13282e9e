#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gips/ips.hpp"

namespace gips {

/// Cycle model on `dim` vertices: vertices 1..dim, edges
/// {1,2},...,{dim-1,dim},{dim,1}. Non-chordal and prime for dim >= 4.
ModelSpec cycle_model(int dim);

struct BenchSpec {
    std::vector<int> dims;
    int replications = 1;
    std::uint64_t seed = 1;
    int dof = 0;  // 0 = per-dim default dof = dim
    std::vector<StepMode> modes{StepMode::direct, StepMode::localized};
    int max_sweeps = 10000;
    double tol = 1e-6;
};

/// Aggregates over the replications of one (dim, mode) cell. Flop means
/// are per clique update; replications that signal a numerical failure
/// are counted in `failures` and excluded from the means.
struct BenchRecord {
    int dim = 0;
    StepMode mode = StepMode::direct;
    int reps = 0;
    double mean_step_seconds = 0.0;
    double mean_step_flops_mult = 0.0;
    double mean_step_flops_div = 0.0;
    double mean_step_flops_sub = 0.0;
    double mean_sweeps = 0.0;
    double converged_fraction = 0.0;
    int failures = 0;
};

const char* mode_name(StepMode m);
StepMode mode_from_name(const std::string& name);

/// Fits `replications` cycle-model instances per dim, every mode seeing
/// the same Wishart draw per (dim, replication), all from K0 = I.
/// Scatter seeds derive deterministically from spec.seed, dim and the
/// replication index.
std::vector<BenchRecord> run_benchmark(const BenchSpec& spec);

struct ProbeRecord {
    int dim = 0;
    double seconds = 0.0;  // median over the repetitions
};

/// Times dense positive definite inversion on Wishart draws per dim.
std::vector<ProbeRecord> inverse_timing_probe(const std::vector<int>& dims,
                                              std::uint64_t seed = 20240601, int reps = 5);

}  // namespace gips

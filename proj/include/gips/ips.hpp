#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "gips/chordal.hpp"
#include "gips/matrix.hpp"
#include "gips/model.hpp"

namespace gips {

enum class StepMode { direct, localized };

struct IpsConfig {
    int max_sweeps = 10000;
    double tol = 1e-6;  // threshold for the per-sweep sum of |k_ij - k_ij(prev sweep)|
    StepMode mode = StepMode::localized;
    std::optional<SymMatrix> initial;  // defaults to the identity

    // Chordal (sub)models are normally solved in closed form and graphs
    // with clique separators are split first; tests and benchmarks can
    // force plain whole-graph sweeping by switching these off.
    bool use_closed_form = true;
    bool use_decomposition = true;

    // Called after every clique update with the current iterate of the
    // piece being fitted, the 1-based sweep number, and the clique.
    std::function<void(const SymMatrix&, int, const VertexSet&)> observer;
};

/// One elimination of the localized schedule: remove workspace vertex
/// `delta`, downdating the block on the surviving members `q` of the
/// active clique (index m in the anchored sequence).
struct ScheduleStep {
    int m;
    int delta;
    int delta_label;
    std::vector<int> q;
};

/// Everything one clique's localized update needs, precomputed once and
/// reused across sweeps: the anchored perfect sequence, the elimination
/// schedule in its induced order, the scaled scatter-block inverse
/// n*(W_CC)^-1, and index lists mapping the concentration matrix into a
/// compact workspace over the union of the anchored cliques.
struct CliquePlan {
    VertexSet clique;
    ChordalStructure anchored;
    std::vector<ScheduleStep> schedule;
    Mat w_cc_inv_scaled;

    VertexSet labels;          // variable labels of the model this plan serves
    VertexSet touched;         // union of the anchored cliques
    int local_dim = 0;         //".size()" of touched; workspace stride
    // entries to pull from K each step: workspace (i,j) with i <= j and
    // the matching indices into the model's matrix
    struct Load {
        int li, lj, mi, mj;
    };
    std::vector<Load> loads;
    std::vector<int> c_local;  // workspace indices of `clique`
    std::vector<int> c_model;  // model matrix indices of `clique`
};

/// Predicted cost of running one localized marginal inverse, stated two
/// ways that must agree: the literal sum over schedule steps of
/// (|Q| divisions, |Q|^2 multiplications, |Q|^2 subtractions), and the
/// closed-form expansion per stage,
///   sum_m [ r c^2 - c r(r+1) + r(r+1)(2r+1)/6 ]   (c = |C*_m|, r = |R*_m|)
/// for multiplications/subtractions and sum_m [ rc - r(r+1)/2 ] for
/// divisions.
struct FlopPrediction {
    FlopCount by_sum;
    FlopCount by_formula;
};

struct FitResult {
    Concentration k_hat;
    SymMatrix sigma_hat;
    int sweeps = 0;
    double final_change = 0.0;
    bool converged = false;
    FlopCount flops;                 // update-phase arithmetic only
    int steps = 0;                   // clique updates performed
    double wall_time_per_step = 0.0; // seconds, update phase / steps
};

/// One step of plain iterative proportional scaling on clique c:
///   K_CC <- n*(W_CC)^-1 + K_CD (K_DD)^-1 K_DC,   D = all other vertices,
/// which restores the clique margin n*(K^-1)_CC = W_CC. Everything
/// outside the C block is untouched.
Concentration direct_step(const Concentration& k, const SuffStats& stats, const VertexSet& c,
                          FlopCount* fc = nullptr);

/// Same map written through the block-inverse identity:
///   K_CC <- n*(W_CC)^-1 + K_CC - ((K^-1)_CC)^-1.
Concentration direct_step_rewritten(const Concentration& k, const SuffStats& stats,
                                    const VertexSet& c, FlopCount* fc = nullptr);

/// Builds the reusable localized-update plan for clique c of the model
/// whose chordal extension is cs. The schedule eliminates, clique by
/// clique from the back of the anchored perfect sequence, each
/// residual's vertices in descending label order; each eliminated
/// vertex is simplicial at its turn, so its surviving neighbours are
/// exactly the remnant of the active clique.
CliquePlan build_clique_plan(const ChordalStructure& cs, const VertexSet& c,
                             const SuffStats& stats);

/// Runs the plan's eliminations on a workspace copy of K restricted to
/// the touched blocks and returns the |C|x|C| result, which equals
/// ((K^-1)_CC)^-1 without ever forming the full inverse. A caller may
/// hand in a scratch buffer to reuse across calls; it is grown on
/// demand and its contents need not be preserved.
Mat localized_marginal_inverse(const SymMatrix& k, const CliquePlan& plan,
                               FlopCount* fc = nullptr,
                               std::vector<double>* workspace = nullptr);

/// direct_step computed through localized_marginal_inverse; same
/// mathematical map, cost O(|C|^2 + sum_m |R*_m| |C*_m|^2) per call.
Concentration localized_step(const Concentration& k, const SuffStats& stats,
                             const CliquePlan& plan, FlopCount* fc = nullptr);

/// Full fitting loop. Chordal models return the closed form with zero
/// sweeps; models with clique separators are split into prime pieces,
/// fitted independently, and recombined. Each IPS piece sweeps its
/// maximal cliques in ascending lexicographic order until the per-sweep
/// change drops to cfg.tol or max_sweeps is hit (reported via
/// converged = false, best iterate returned).
FitResult fit(const ModelSpec& spec, const SuffStats& stats, const IpsConfig& cfg = {});

/// Cost prediction for one localized marginal inverse under `plan`;
/// runtime counters from localized_marginal_inverse must match both
/// fields exactly.
FlopPrediction flop_report(const CliquePlan& plan);

}  // namespace gips

// Command-line front end: fit a model, benchmark the two step modes,
// inspect a graph's prime decomposition, or time dense inversion.
//
// Exit codes: 0 success, 1 input error, 2 numerical failure (a matrix
// that must be positive definite is not), 3 fit did not converge.

#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gips/bench.hpp"
#include "gips/chordal.hpp"
#include "gips/io.hpp"
#include "gips/ips.hpp"

namespace {

using nlohmann::json;

struct FitOptions {
    std::string graph_path;
    std::string data_path;
    std::string scatter_path;
    int n = 0;
    std::string mode = "localized";
    double tol = 1e-6;
    int max_sweeps = 10000;
    std::string out_prefix = "fit";
    bool no_decompose = false;
    bool no_closed_form = false;
};

int run_fit(const FitOptions& opt) {
    if (opt.data_path.empty() == opt.scatter_path.empty()) {
        std::cerr << "fit: give exactly one of --data or --scatter\n";
        return 1;
    }

    gips::Graph g = gips::load_graph(opt.graph_path);
    gips::ModelSpec spec = gips::ModelSpec::from_graph(g);

    gips::SuffStats stats;
    if (!opt.data_path.empty()) {
        gips::Mat data = gips::read_samples_csv(opt.data_path);
        stats = gips::suff_stats_from_samples(data, g.vertices());
    } else {
        if (opt.n < 1) {
            std::cerr << "fit: --scatter requires --n (the sample count behind the scatter)\n";
            return 1;
        }
        gips::SymMatrix w = gips::read_matrix_csv(opt.scatter_path);
        if (w.labels() != g.vertices())
            throw std::invalid_argument("fit: scatter labels do not match the graph vertices");
        stats = gips::suff_stats_from_scatter(opt.n, w);
    }

    gips::IpsConfig cfg;
    cfg.mode = gips::mode_from_name(opt.mode);
    cfg.tol = opt.tol;
    cfg.max_sweeps = opt.max_sweeps;
    cfg.use_decomposition = !opt.no_decompose;
    cfg.use_closed_form = !opt.no_closed_form;

    gips::FitResult res = gips::fit(spec, stats, cfg);
    double residual = gips::likelihood_residual(res.k_hat.k, stats, spec.cliques());
    double ll = gips::loglik(res.k_hat.k, stats);

    gips::write_matrix_csv(opt.out_prefix + "_khat.csv", res.k_hat.k);

    json summary = {
        {"n", stats.n},
        {"sweeps", res.sweeps},
        {"residual", residual},
        {"loglik", ll},
        {"converged", res.converged},
        {"mode", opt.mode},
        {"final_change", res.final_change},
        {"steps", res.steps},
        {"wall_time_per_step", res.wall_time_per_step},
        {"flops",
         {{"mults", res.flops.mults},
          {"divs", res.flops.divs},
          {"subs", res.flops.subs},
          {"adds", res.flops.adds}}},
    };
    std::ofstream js(opt.out_prefix + "_summary.json");
    if (!js) throw std::runtime_error("cannot open '" + opt.out_prefix + "_summary.json'");
    js << summary.dump(2) << '\n';

    std::cout << summary.dump(2) << '\n';
    if (!res.converged) {
        std::cerr << "fit: not converged after " << res.sweeps
                  << " sweeps (last change " << res.final_change << ")\n";
        return 3;
    }
    return 0;
}

int run_decompose(const std::string& graph_path) {
    gips::Graph g = gips::load_graph(graph_path);
    gips::PrimeDecomposition dec = gips::mp_decompose(g);

    auto print_set = [](const gips::VertexSet& vs) {
        std::cout << '{';
        for (size_t i = 0; i < vs.size(); ++i) std::cout << (i ? "," : "") << vs[i];
        std::cout << '}';
    };

    std::cout << "prime subgraphs (" << dec.part_count() << "):\n";
    for (const gips::Graph& part : dec.parts) {
        std::cout << "  ";
        print_set(part.vertices());
        std::cout << "  edges=" << part.edges().size()
                  << (gips::is_chordal(part) ? "  chordal" : "") << '\n';
    }
    std::cout << "separators (" << dec.separators.size() << "):\n";
    for (const gips::VertexSet& s : dec.separators) {
        std::cout << "  ";
        print_set(s);
        std::cout << '\n';
    }

    gips::ChordalStructure cs = gips::triangulate(g);
    size_t max_clique = 0;
    for (const auto& c : cs.cliques) max_clique = std::max(max_clique, c.size());
    std::cout << "chordal extension: " << cs.fill_edges.size() << " fill edges, "
              << cs.clique_count() << " cliques, largest " << max_clique << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gaussian graphical model fitting by iterative proportional scaling"};
    app.require_subcommand(1);

    FitOptions fit_opt;
    CLI::App* fit = app.add_subcommand("fit", "fit a concentration matrix to data");
    fit->add_option("--graph", fit_opt.graph_path, "model graph file")->required();
    fit->add_option("--data", fit_opt.data_path, "samples CSV, one row per observation");
    fit->add_option("--scatter", fit_opt.scatter_path, "precomputed scatter matrix CSV");
    fit->add_option("--n", fit_opt.n, "sample count when --scatter is used");
    fit->add_option("--mode", fit_opt.mode, "direct or localized (default localized)")
        ->check(CLI::IsMember({"direct", "localized"}));
    fit->add_option("--tol", fit_opt.tol, "per-sweep change threshold (default 1e-6)");
    fit->add_option("--max-sweeps", fit_opt.max_sweeps, "sweep limit (default 10000)");
    fit->add_option("--out", fit_opt.out_prefix, "output prefix (default 'fit')");
    fit->add_flag("--no-decompose", fit_opt.no_decompose,
                  "fit the whole graph without splitting at clique separators");
    fit->add_flag("--no-closed-form", fit_opt.no_closed_form,
                  "iterate even when the model is decomposable");

    gips::BenchSpec bench_spec;
    std::vector<std::string> bench_modes{"direct", "localized"};
    std::string bench_out = "bench.csv";
    CLI::App* bench = app.add_subcommand("bench", "compare per-step cost on cycle models");
    bench->add_option("--dims", bench_spec.dims, "cycle dimensions")->required()->delimiter(',');
    bench->add_option("--reps", bench_spec.replications, "replications per dim (default 1)");
    bench->add_option("--seed", bench_spec.seed, "base seed (default 1)");
    bench->add_option("--dof", bench_spec.dof, "Wishart degrees of freedom (default: dim)");
    bench->add_option("--modes", bench_modes, "subset of direct,localized")->delimiter(',');
    bench->add_option("--max-sweeps", bench_spec.max_sweeps, "sweep limit (default 10000)");
    bench->add_option("--tol", bench_spec.tol, "convergence threshold (default 1e-6)");
    bench->add_option("--out", bench_out, "output CSV (default bench.csv)");

    std::string decompose_graph;
    CLI::App* dec = app.add_subcommand("decompose", "print the prime decomposition of a graph");
    dec->add_option("--graph", decompose_graph, "graph file")->required();

    std::vector<int> probe_dims;
    std::string probe_out;
    CLI::App* probe = app.add_subcommand("probe-inverse", "time dense PD inversion per dim");
    probe->add_option("--dims", probe_dims, "matrix dimensions")->required()->delimiter(',');
    probe->add_option("--out", probe_out, "output CSV (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (fit->parsed()) return run_fit(fit_opt);
        if (dec->parsed()) return run_decompose(decompose_graph);
        if (bench->parsed()) {
            bench_spec.modes.clear();
            for (const std::string& m : bench_modes)
                bench_spec.modes.push_back(gips::mode_from_name(m));
            auto records = gips::run_benchmark(bench_spec);
            gips::write_bench_csv(bench_out, records);
            gips::write_bench_csv(std::cout, records);
            return 0;
        }
        if (probe->parsed()) {
            auto records = gips::inverse_timing_probe(probe_dims);
            if (probe_out.empty())
                gips::write_probe_csv(std::cout, records);
            else
                gips::write_probe_csv(probe_out, records);
            return 0;
        }
    } catch (const gips::not_positive_definite& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

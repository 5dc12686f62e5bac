#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mgl/generators.hpp"
#include "mgl/solver.hpp"

namespace mgl {

// Normalized squared distance between unit-Frobenius projections; in [0, 4]
// and invariant to positive rescaling of either argument.
double err_gso(const Eigen::MatrixXd& est, const Eigen::MatrixXd& truth);
double err_spectrum(const Eigen::VectorXd& est, const Eigen::VectorXd& truth);

// One estimation method inside an experiment. kind mgl | unc | tr_fixed run
// the solver (targets for mgl are built per realization from the reference
// spectrum via target_fns and target_delta); pinv | glasso are direct.
struct MethodSpec {
    std::string label;
    std::string kind;
    SolverConfig solver;
    std::vector<std::string> target_fns;
    double target_delta = 0.0;
    double glasso_alpha = 0.1;
    int glasso_max_iters = 200;
    double glasso_tol = 1e-6;
};

struct ExperimentSpec {
    std::string name;
    GraphModel truth_model;
    GraphModel reference_model;
    std::string sweep; // samples | neighbors | p_inter
    std::vector<double> sweep_values;
    int samples = 500; // observation count when the sweep is something else
    std::vector<MethodSpec> methods;
    int realizations = 20;
    uint64_t base_seed = 1;
    std::string out_dir; // empty: compute only, write nothing
    bool dump_histograms = false;
    int threads = 0; // 0: library default
};

struct MetricRow {
    std::string method;
    double sweep_value;
    double mean_err_gso, stderr_gso;
    double mean_err_spectrum, stderr_spectrum;
    int used;
};

struct RawRecord {
    int sweep_index;
    double sweep_value;
    int realization;
    std::string method;
    std::string status; // "ok" or the error message
    double e_gso, e_spectrum;
};

struct ExperimentResult {
    std::vector<MetricRow> rows;
    std::vector<RawRecord> raw;
};

// Runs every (sweep value, realization, method) cell. The realization seed
// is derived from (base_seed, stream, sweep index, realization index), so
// results are independent of thread count and stable when realizations grow.
// A failing cell is recorded with its error message and excluded from means,
// never dropped silently. When out_dir is set, writes
// <out_dir>/<name>/{summary.csv, raw.csv, config.snapshot, histograms/*.csv}.
ExperimentResult run_experiment(const ExperimentSpec& spec,
                                const std::string& config_snapshot = "");

// Edge list plus signal CSV (rows = nodes, columns = observations).
std::pair<Graph, SignalBatch> ingest_real(const std::string& edges_path,
                                          const std::string& signals_path);

} // namespace mgl

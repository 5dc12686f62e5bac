// Command line front end: motif census, spectral-similarity reports, single
// solves, experiment sweeps, and hyperparameter grid search.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "mgl/baselines.hpp"
#include "mgl/config.hpp"
#include "mgl/harness.hpp"
#include "mgl/io.hpp"
#include "mgl/motif.hpp"

using nlohmann::json;
namespace fs = std::filesystem;
using namespace mgl;

namespace {

void print_census(std::ostream& os, const MotifCensus& census) {
    os << "radius," << census.radius << "\n";
    os << "nodes," << census.n << "\n";
    os << "max_degree," << census.max_degree << "\n";
    os << "class_key,density\n";
    for (const auto& [key, density] : census.densities)
        os << key_to_hex(key) << "," << format_double(density) << "\n";
}

int cmd_census(const std::string& graph_path, const std::string& other_path, int radius,
               const std::string& out_dir) {
    const Graph g = read_edge_list(graph_path);
    const MotifCensus census = motif_census(g, radius);
    std::ostringstream body;
    print_census(body, census);
    if (!other_path.empty()) {
        const MotifCensus other = motif_census(read_edge_list(other_path), radius);
        body << "census_distance," << format_double(census_distance(census, other)) << "\n";
    }
    std::cout << body.str();
    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        std::ofstream out(fs::path(out_dir) / "census.csv");
        out << body.str();
    }
    return 0;
}

int cmd_theorem1(const std::string& graph_path, const std::string& other_path, int radius,
                 const std::string& out_dir) {
    const Graph a = read_edge_list(graph_path);
    const Graph b = read_edge_list(other_path);
    const TheoremReport rep = theorem1_check(a, b, radius, all_test_functions());
    std::ostringstream body;
    body << "census_distance," << format_double(rep.epsilon) << "\n";
    body << "fn,cg_graph,cg_other,delta\n";
    for (const auto& e : rep.entries)
        body << e.fn << "," << format_double(e.cg1) << "," << format_double(e.cg2) << ","
             << format_double(e.delta) << "\n";
    std::cout << body.str();
    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        std::ofstream out(fs::path(out_dir) / "theorem1.csv");
        out << body.str();
    }
    return 0;
}

struct SolveInputs {
    std::string cov_path, signals_path, reference_path, target_fn = "tr";
    double target_value = 0.0, target_delta = 0.0;
    bool target_value_set = false;
};

int cmd_solve(const SolveInputs& in, const std::string& config_path, const std::string& out_dir) {
    if (in.cov_path.empty() == in.signals_path.empty())
        throw InvalidParamsError("solve needs exactly one of --cov and --signals");
    Eigen::MatrixXd c_hat;
    if (!in.cov_path.empty()) {
        c_hat = read_csv_matrix(in.cov_path);
    } else {
        const Eigen::MatrixXd x = read_csv_matrix(in.signals_path);
        c_hat = x * x.transpose() / static_cast<double>(x.cols());
    }

    SolverConfig cfg;
    std::vector<std::string> target_fns;
    double config_delta = 0.0;
    if (!config_path.empty()) {
        const json j = load_json_file(config_path);
        cfg = solver_from_json(j.contains("solver") ? j.at("solver") : j);
        target_fns = j.value("target_fns", target_fns);
        config_delta = j.value("target_delta", 0.0);
    }
    if (!in.reference_path.empty()) {
        const Graph ref = read_edge_list(in.reference_path);
        const Eigen::VectorXd lam = eig_sym(laplacian(ref)).eigenvalues;
        if (target_fns.empty()) target_fns = {in.target_fn};
        for (const auto& name : target_fns) {
            const TestFunction& f = test_function(name);
            cfg.targets.emplace_back(f, c_g(lam, f), config_delta, "reference_graph");
        }
    }
    if (in.target_value_set)
        cfg.targets.emplace_back(test_function(in.target_fn), in.target_value, in.target_delta,
                                 "explicit");

    const int n = static_cast<int>(c_hat.rows());
    const SolverState st = solve(c_hat, n, cfg);
    std::cout << "iterations," << st.iter << "\n";
    std::cout << "converged," << (st.converged ? 1 : 0) << "\n";
    std::cout << "objective," << format_double(st.objective_trace.back()) << "\n";
    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        const fs::path base(out_dir);
        write_csv_matrix((base / "laplacian.csv").string(), st.S);
        write_csv_column((base / "lambda.csv").string(), "lambda",
                         {st.lambda.data(), st.lambda.data() + st.lambda.size()});
        write_csv_column((base / "objective.csv").string(), "objective", st.objective_trace);
        write_laplacian_edge_list((base / "estimated_edges.txt").string(), st.S);
    }
    return 0;
}

void print_rows(const std::vector<MetricRow>& rows) {
    std::cout << "method,sweep_value,mean_err_gso,stderr_gso,mean_err_spectrum,"
                 "stderr_spectrum,realizations_used\n";
    for (const auto& r : rows)
        std::cout << r.method << "," << format_double(r.sweep_value) << ","
                  << format_double(r.mean_err_gso) << "," << format_double(r.stderr_gso) << ","
                  << format_double(r.mean_err_spectrum) << "," << format_double(r.stderr_spectrum)
                  << "," << r.used << "\n";
}

int cmd_experiment(const std::string& config_path, const std::string& out_dir, uint64_t seed,
                   bool seed_set, int threads) {
    const json j = load_json_file(config_path);
    ExperimentSpec spec = spec_from_json(j);
    if (seed_set) spec.base_seed = seed;
    if (threads > 0) spec.threads = threads;
    if (!out_dir.empty()) spec.out_dir = out_dir;
    const ExperimentResult res = run_experiment(spec, j.dump(2) + "\n");
    print_rows(res.rows);
    int failures = 0;
    for (const auto& r : res.raw)
        if (r.status != "ok") ++failures;
    if (failures > 0) std::cerr << failures << " of " << res.raw.size() << " cells failed\n";
    return 0;
}

int cmd_gridsearch(const std::string& config_path, const std::string& out_dir, uint64_t seed,
                   bool seed_set, int threads) {
    const json j = load_json_file(config_path);
    const ExperimentSpec base = spec_from_json(j.at("experiment"));
    const json grid = j.at("grid");
    const std::vector<double> alphas = grid.value("alpha", std::vector<double>{-1.0});
    const std::vector<double> betas = grid.value("beta", std::vector<double>{-1.0});
    const std::vector<double> gammas = grid.value("gamma", std::vector<double>{-1.0});
    const std::string metric = j.value("metric", std::string("spectrum"));
    if (metric != "spectrum" && metric != "gso")
        throw InvalidParamsError("metric must be spectrum or gso");
    std::string label = j.value("method_label", std::string{});
    if (label.empty()) {
        for (const auto& m : base.methods)
            if (m.kind == "mgl" || m.kind == "unc" || m.kind == "tr_fixed") {
                label = m.label;
                break;
            }
        if (label.empty()) throw InvalidParamsError("no solver-based method to tune");
    }

    const SolverConfig& base_solver = [&]() -> const SolverConfig& {
        for (const auto& m : base.methods)
            if (m.label == label) return m.solver;
        throw InvalidParamsError("method_label not found: " + label);
    }();

    struct Row {
        double alpha, beta, gamma, score;
    };
    std::vector<Row> rows;
    for (double a : alphas)
        for (double b : betas)
            for (double g : gammas) {
                ExperimentSpec spec = base;
                if (seed_set) spec.base_seed = seed;
                if (threads > 0) spec.threads = threads;
                spec.out_dir.clear();
                for (auto& m : spec.methods) {
                    if (m.kind != "mgl" && m.kind != "unc" && m.kind != "tr_fixed") continue;
                    if (a >= 0.0) m.solver.alpha = a;
                    if (b > 0.0) m.solver.beta = b;
                    if (g >= 0.0) m.solver.gamma = g;
                }
                const ExperimentResult res = run_experiment(spec);
                double score = 0.0;
                int used = 0;
                for (const auto& r : res.rows) {
                    if (r.method != label) continue;
                    const double v = metric == "gso" ? r.mean_err_gso : r.mean_err_spectrum;
                    if (std::isnan(v)) continue;
                    score += v;
                    ++used;
                }
                score = used > 0 ? score / used : std::numeric_limits<double>::quiet_NaN();
                rows.push_back({a >= 0.0 ? a : base_solver.alpha, b > 0.0 ? b : base_solver.beta,
                                g >= 0.0 ? g : base_solver.gamma, score});
                std::cout << "alpha=" << rows.back().alpha << " beta=" << rows.back().beta
                          << " gamma=" << rows.back().gamma
                          << " score=" << format_double(score) << "\n";
            }

    std::stable_sort(rows.begin(), rows.end(), [](const Row& x, const Row& y) {
        if (std::isnan(x.score)) return false;
        if (std::isnan(y.score)) return true;
        return x.score < y.score;
    });
    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        std::ofstream out(fs::path(out_dir) / "gridsearch.csv");
        out << "alpha,beta,gamma,score_" << metric << "\n";
        for (const auto& r : rows)
            out << format_double(r.alpha) << "," << format_double(r.beta) << ","
                << format_double(r.gamma) << "," << format_double(r.score) << "\n";
    }
    if (!rows.empty() && !std::isnan(rows.front().score))
        std::cout << "best: alpha=" << rows.front().alpha << " beta=" << rows.front().beta
                  << " gamma=" << rows.front().gamma << " score=" << format_double(rows.front().score)
                  << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Graph learning under motif-derived spectral constraints"};
    app.require_subcommand(1);

    uint64_t seed = 0;
    bool seed_set = false;
    std::string config_path, out_dir;
    int threads = 0;
    app.add_option("--seed", seed, "Base random seed")->each([&](const std::string&) {
        seed_set = true;
    });
    app.add_option("--config", config_path, "JSON config file");
    app.add_option("--out", out_dir, "Output directory");
    app.add_option("--threads", threads, "Worker thread count (0 = library default)");
    app.fallthrough();

    std::string graph_path, other_path;
    int radius = 1;

    auto* census = app.add_subcommand("census", "Rooted-ball census of a graph");
    census->add_option("--graph", graph_path, "Edge list file")->required();
    census->add_option("--other", other_path, "Second edge list for a census distance");
    census->add_option("--radius", radius, "Ball radius");

    auto* theorem1 = app.add_subcommand("theorem1", "Census distance vs spectral statistic gap");
    theorem1->add_option("--graph", graph_path, "Edge list file")->required();
    theorem1->add_option("--other", other_path, "Second edge list file")->required();
    theorem1->add_option("--radius", radius, "Ball radius");

    SolveInputs si;
    auto* solve_cmd = app.add_subcommand("solve", "Estimate a Laplacian from observations");
    solve_cmd->add_option("--cov", si.cov_path, "Covariance CSV file");
    solve_cmd->add_option("--signals", si.signals_path, "Raw signals CSV (rows = nodes)");
    solve_cmd->add_option("--reference", si.reference_path,
                          "Reference-graph edge list; targets from its spectrum");
    solve_cmd->add_option("--target-fn", si.target_fn, "Test function for explicit targets");
    solve_cmd->add_option("--target-value", si.target_value, "Explicit spectral target value")
        ->each([&](const std::string&) { si.target_value_set = true; });
    solve_cmd->add_option("--target-delta", si.target_delta, "Slack around the target value");

    app.add_subcommand("experiment", "Run an experiment sweep from a config");
    app.add_subcommand("gridsearch", "Grid-search solver hyperparameters");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand("census")) return cmd_census(graph_path, other_path, radius, out_dir);
        if (app.got_subcommand("theorem1"))
            return cmd_theorem1(graph_path, other_path, radius, out_dir);
        if (app.got_subcommand("solve")) return cmd_solve(si, config_path, out_dir);
        if (app.got_subcommand("experiment")) {
            if (config_path.empty()) throw InvalidParamsError("experiment needs --config");
            return cmd_experiment(config_path, out_dir, seed, seed_set, threads);
        }
        if (app.got_subcommand("gridsearch")) {
            if (config_path.empty()) throw InvalidParamsError("gridsearch needs --config");
            return cmd_gridsearch(config_path, out_dir, seed, seed_set, threads);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

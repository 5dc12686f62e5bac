#include "mgl/harness.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "mgl/baselines.hpp"
#include "mgl/io.hpp"
#include "mgl/rng.hpp"

namespace mgl {

double err_gso(const Eigen::MatrixXd& est, const Eigen::MatrixXd& truth) {
    if (est.rows() != truth.rows() || est.cols() != truth.cols())
        throw DimensionMismatchError("estimate and truth shapes differ");
    const double na = est.norm(), nb = truth.norm();
    if (na == 0.0 || nb == 0.0) throw ZeroMatrixError("error metric needs nonzero matrices");
    return (est / na - truth / nb).squaredNorm();
}

double err_spectrum(const Eigen::VectorXd& est, const Eigen::VectorXd& truth) {
    if (est.size() != truth.size()) throw DimensionMismatchError("spectra lengths differ");
    const double na = est.norm(), nb = truth.norm();
    if (na == 0.0 || nb == 0.0) throw ZeroMatrixError("error metric needs nonzero spectra");
    return (est / na - truth / nb).squaredNorm();
}

namespace {

void apply_sweep(const std::string& sweep, double value, GraphModel& truth, GraphModel& ref,
                 int& samples) {
    if (sweep == "samples") {
        samples = static_cast<int>(value);
        if (samples < 1) throw InvalidParamsError("samples sweep value must be >= 1");
    } else if (sweep == "neighbors") {
        const int k = static_cast<int>(value);
        if (k < 2) throw InvalidParamsError("neighbors sweep value must be >= 2");
        truth.neighbors = k;
        ref.neighbors = k;
    } else if (sweep == "p_inter") {
        if (value < 0.0 || value > 1.0) throw InvalidParamsError("p_inter sweep value in [0,1]");
        truth.p_inter = value;
        ref.p_inter = value;
    } else {
        throw InvalidParamsError("unknown sweep: " + sweep);
    }
}

Eigen::MatrixXd run_method(const MethodSpec& m, const Eigen::MatrixXd& c_hat, int n, int q,
                           const Eigen::VectorXd& ref_lambda) {
    if (m.kind == "pinv") return pinv_estimator(c_hat);
    if (m.kind == "glasso")
        return glasso_estimator(c_hat, m.glasso_alpha, m.glasso_max_iters, m.glasso_tol).theta;
    SolverConfig cfg = m.solver;
    cfg.zero_eigs = q;
    if (m.kind == "unc") {
        cfg.mode = SolverMode::unconstrained;
    } else if (m.kind == "tr_fixed") {
        cfg.mode = SolverMode::fixed_trace;
    } else if (m.kind == "mgl") {
        cfg.mode = SolverMode::mgl;
        cfg.targets.clear();
        for (const auto& name : m.target_fns) {
            const TestFunction& fn = test_function(name);
            cfg.targets.emplace_back(fn, c_g(ref_lambda, fn), m.target_delta, "reference_graph");
        }
    } else {
        throw InvalidParamsError("unknown method kind: " + m.kind);
    }
    return solve(c_hat, n, cfg).S;
}

std::string sanitize(const std::string& s) {
    std::string out = s;
    for (char& c : out)
        if (!std::isalnum(static_cast<unsigned char>(c))) c = '_';
    return out;
}

std::string csv_safe(const std::string& s) {
    std::string out = s;
    for (char& c : out)
        if (c == ',' || c == '\n' || c == '\r') c = ';';
    return out;
}

struct Histogram {
    std::string file;
    std::vector<double> values;
};

} // namespace

ExperimentResult run_experiment(const ExperimentSpec& spec, const std::string& config_snapshot) {
    if (spec.realizations < 1) throw InvalidParamsError("realizations must be >= 1");
    if (spec.sweep_values.empty()) throw InvalidParamsError("sweep_values must be nonempty");
    if (spec.methods.empty()) throw InvalidParamsError("methods must be nonempty");
    if (spec.name.empty()) throw InvalidParamsError("experiment name must be nonempty");
    if (spec.samples < 1) throw InvalidParamsError("samples must be >= 1");
    for (const auto& m : spec.methods)
        if (m.label.empty()) throw InvalidParamsError("method label must be nonempty");

    const int nsweep = static_cast<int>(spec.sweep_values.size());
    const int nreal = spec.realizations;
    const int nmeth = static_cast<int>(spec.methods.size());
    const double nan = std::numeric_limits<double>::quiet_NaN();

    ExperimentResult res;
    res.raw.assign(static_cast<size_t>(nsweep) * nreal * nmeth, RawRecord{});
    std::vector<Histogram> hists(spec.dump_histograms
                                     ? static_cast<size_t>(nsweep) * (nmeth + 2)
                                     : 0);

#ifdef _OPENMP
    const int nthreads = spec.threads > 0 ? spec.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(nthreads)
#endif
    for (int flat = 0; flat < nsweep * nreal; ++flat) {
        const int j = flat / nreal;
        const int i = flat % nreal;
        const double value = spec.sweep_values[j];
        RawRecord* cells = &res.raw[(static_cast<size_t>(j) * nreal + i) * nmeth];
        for (int k = 0; k < nmeth; ++k)
            cells[k] = {j, value, i, spec.methods[k].label, "ok", nan, nan};

        GraphModel truth_model = spec.truth_model;
        GraphModel ref_model = spec.reference_model;
        int samples = spec.samples;
        Eigen::MatrixXd l_truth, c_hat;
        Eigen::VectorXd truth_lambda, ref_lambda;
        int q = 1, n = 0;
        try {
            apply_sweep(spec.sweep, value, truth_model, ref_model, samples);
            const Graph truth =
                generate(truth_model, derive_seed(spec.base_seed, {stream::graph,
                                                                   static_cast<uint64_t>(j),
                                                                   static_cast<uint64_t>(i)}));
            const Graph ref =
                generate(ref_model, derive_seed(spec.base_seed, {stream::reference,
                                                                 static_cast<uint64_t>(j),
                                                                 static_cast<uint64_t>(i)}));
            n = truth.n();
            l_truth = laplacian(truth);
            q = truth.num_components();
            truth_lambda = eig_sym(l_truth).eigenvalues;
            ref_lambda = eig_sym(laplacian(ref)).eigenvalues;
            const SignalBatch batch = sample_gmrf(
                l_truth, samples,
                derive_seed(spec.base_seed, {stream::signals, static_cast<uint64_t>(j),
                                             static_cast<uint64_t>(i)}),
                q);
            c_hat = empirical_covariance(batch);
        } catch (const std::exception& e) {
            for (int k = 0; k < nmeth; ++k) cells[k].status = csv_safe(e.what());
            continue;
        }

        if (spec.dump_histograms && i == 0) {
            Histogram* slot = &hists[static_cast<size_t>(j) * (nmeth + 2)];
            slot[0] = {"sweep" + std::to_string(j) + "_truth.csv",
                       {truth_lambda.data(), truth_lambda.data() + truth_lambda.size()}};
            slot[1] = {"sweep" + std::to_string(j) + "_reference.csv",
                       {ref_lambda.data(), ref_lambda.data() + ref_lambda.size()}};
        }

        for (int k = 0; k < nmeth; ++k) {
            try {
                const Eigen::MatrixXd est = run_method(spec.methods[k], c_hat, n, q, ref_lambda);
                const Eigen::VectorXd est_lambda = eig_sym(est).eigenvalues;
                cells[k].e_gso = err_gso(est, l_truth);
                cells[k].e_spectrum = err_spectrum(est_lambda, truth_lambda);
                if (spec.dump_histograms && i == 0)
                    hists[static_cast<size_t>(j) * (nmeth + 2) + 2 + k] = {
                        "sweep" + std::to_string(j) + "_" + sanitize(spec.methods[k].label) +
                            ".csv",
                        {est_lambda.data(), est_lambda.data() + est_lambda.size()}};
            } catch (const std::exception& e) {
                cells[k].status = csv_safe(e.what());
            }
        }
    }

    // Aggregate in deterministic (method, sweep) order over ok cells.
    for (int k = 0; k < nmeth; ++k)
        for (int j = 0; j < nsweep; ++j) {
            std::vector<double> gs, sp;
            for (int i = 0; i < nreal; ++i) {
                const RawRecord& r = res.raw[(static_cast<size_t>(j) * nreal + i) * nmeth + k];
                if (r.status != "ok") continue;
                gs.push_back(r.e_gso);
                sp.push_back(r.e_spectrum);
            }
            MetricRow row;
            row.method = spec.methods[k].label;
            row.sweep_value = spec.sweep_values[j];
            row.used = static_cast<int>(gs.size());
            auto mean_se = [](const std::vector<double>& v, double& mean, double& se) {
                if (v.empty()) {
                    mean = std::numeric_limits<double>::quiet_NaN();
                    se = mean;
                    return;
                }
                mean = 0.0;
                for (double x : v) mean += x;
                mean /= static_cast<double>(v.size());
                double var = 0.0;
                for (double x : v) var += (x - mean) * (x - mean);
                se = v.size() > 1 ? std::sqrt(var / (static_cast<double>(v.size()) - 1) /
                                              static_cast<double>(v.size()))
                                  : 0.0;
            };
            mean_se(gs, row.mean_err_gso, row.stderr_gso);
            mean_se(sp, row.mean_err_spectrum, row.stderr_spectrum);
            res.rows.push_back(row);
        }

    if (!spec.out_dir.empty()) {
        namespace fs = std::filesystem;
        const fs::path base = fs::path(spec.out_dir) / spec.name;
        fs::create_directories(base);
        {
            std::ofstream out(base / "summary.csv");
            if (!out) throw Error("cannot write summary.csv");
            out << "method,sweep_value,mean_err_gso,stderr_gso,mean_err_spectrum,"
                   "stderr_spectrum,realizations_used\n";
            for (const auto& r : res.rows)
                out << csv_safe(r.method) << "," << format_double(r.sweep_value) << ","
                    << format_double(r.mean_err_gso) << "," << format_double(r.stderr_gso) << ","
                    << format_double(r.mean_err_spectrum) << ","
                    << format_double(r.stderr_spectrum) << "," << r.used << "\n";
        }
        {
            std::ofstream out(base / "raw.csv");
            if (!out) throw Error("cannot write raw.csv");
            out << "sweep_index,sweep_value,realization,method,status,err_gso,err_spectrum\n";
            for (const auto& r : res.raw)
                out << r.sweep_index << "," << format_double(r.sweep_value) << ","
                    << r.realization << "," << csv_safe(r.method) << "," << csv_safe(r.status)
                    << "," << format_double(r.e_gso) << "," << format_double(r.e_spectrum)
                    << "\n";
        }
        {
            std::ofstream out(base / "config.snapshot");
            if (!out) throw Error("cannot write config.snapshot");
            if (!config_snapshot.empty()) {
                out << config_snapshot;
            } else {
                out << "name=" << spec.name << "\nsweep=" << spec.sweep
                    << "\nrealizations=" << spec.realizations << "\nbase_seed=" << spec.base_seed
                    << "\nsamples=" << spec.samples << "\n";
            }
        }
        if (spec.dump_histograms) {
            fs::create_directories(base / "histograms");
            for (const auto& h : hists)
                if (!h.file.empty())
                    write_csv_column((base / "histograms" / h.file).string(), "eigenvalue",
                                     h.values);
        }
    }
    return res;
}

std::pair<Graph, SignalBatch> ingest_real(const std::string& edges_path,
                                          const std::string& signals_path) {
    Graph g = read_edge_list(edges_path);
    Eigen::MatrixXd x = read_csv_matrix(signals_path);
    if (x.rows() != g.n())
        throw DimensionMismatchError("signal rows must match the graph's node count");
    if (!x.allFinite()) throw NonFiniteInputError("signals have non-finite entries");
    SignalBatch b{std::move(x), 0, 0};
    b.m = static_cast<int>(b.X.cols());
    return {std::move(g), std::move(b)};
}

} // namespace mgl

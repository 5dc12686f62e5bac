#include "mgl/config.hpp"

#include <fstream>

#include "mgl/spectral.hpp"

namespace mgl {

using nlohmann::json;

GraphModel model_from_json(const json& j) {
    GraphModel m;
    m.kind = j.value("kind", m.kind);
    m.n = j.value("n", m.n);
    m.neighbors = j.value("neighbors", m.neighbors);
    m.p_rewire = j.value("p_rewire", m.p_rewire);
    m.communities = j.value("communities", m.communities);
    m.p_intra = j.value("p_intra", m.p_intra);
    m.p_inter = j.value("p_inter", m.p_inter);
    return m;
}

namespace {

SolverMode mode_from_string(const std::string& s) {
    if (s == "unconstrained") return SolverMode::unconstrained;
    if (s == "fixed_trace") return SolverMode::fixed_trace;
    if (s == "mgl") return SolverMode::mgl;
    throw InvalidParamsError("unknown solver mode: " + s);
}

} // namespace

SolverConfig solver_from_json(const json& j) {
    SolverConfig cfg;
    cfg.alpha = j.value("alpha", cfg.alpha);
    cfg.beta = j.value("beta", cfg.beta);
    cfg.gamma = j.value("gamma", cfg.gamma);
    if (j.contains("mode")) cfg.mode = mode_from_string(j.at("mode").get<std::string>());
    cfg.fixed_trace_value = j.value("fixed_trace_value", cfg.fixed_trace_value);
    cfg.max_iters = j.value("max_iters", cfg.max_iters);
    cfg.rel_tol = j.value("rel_tol", cfg.rel_tol);
    cfg.zero_eigs = j.value("zero_eigs", cfg.zero_eigs);
    cfg.step1_reps = j.value("step1_reps", cfg.step1_reps);
    cfg.sqrt_ratio_majorizer = j.value("sqrt_ratio_majorizer", cfg.sqrt_ratio_majorizer);
    for (const auto& t : j.value("targets", json::array()))
        cfg.targets.emplace_back(test_function(t.at("fn").get<std::string>()),
                                 t.at("value").get<double>(), t.value("delta", 0.0),
                                 t.value("source", std::string{"explicit"}));
    return cfg;
}

MethodSpec method_from_json(const json& j) {
    MethodSpec m;
    m.label = j.at("label").get<std::string>();
    m.kind = j.at("kind").get<std::string>();
    if (j.contains("solver")) m.solver = solver_from_json(j.at("solver"));
    m.target_fns = j.value("target_fns", m.target_fns);
    m.target_delta = j.value("target_delta", m.target_delta);
    m.glasso_alpha = j.value("glasso_alpha", m.glasso_alpha);
    m.glasso_max_iters = j.value("glasso_max_iters", m.glasso_max_iters);
    m.glasso_tol = j.value("glasso_tol", m.glasso_tol);
    return m;
}

ExperimentSpec spec_from_json(const json& j) {
    ExperimentSpec spec;
    spec.name = j.at("name").get<std::string>();
    spec.truth_model = model_from_json(j.at("truth_model"));
    spec.reference_model = model_from_json(j.at("reference_model"));
    spec.sweep = j.at("sweep").get<std::string>();
    spec.sweep_values = j.at("sweep_values").get<std::vector<double>>();
    spec.samples = j.value("samples", spec.samples);
    spec.realizations = j.value("realizations", spec.realizations);
    spec.base_seed = j.value("base_seed", spec.base_seed);
    spec.dump_histograms = j.value("dump_histograms", spec.dump_histograms);
    for (const auto& m : j.at("methods")) spec.methods.push_back(method_from_json(m));
    return spec;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open config file: " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("config: ") + e.what(), 0);
    }
}

ExperimentSpec load_experiment_spec(const std::string& path) {
    return spec_from_json(load_json_file(path));
}

} // namespace mgl

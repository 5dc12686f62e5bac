#pragma once

#include <json.hpp>
#include <string>

#include "mgl/harness.hpp"

namespace mgl {

// JSON config loaders. Keys mirror the struct field names; absent keys keep
// the struct defaults. Solver configs carry explicit "targets"; experiment
// methods instead carry "target_fns" whose values are resolved per
// realization from the reference spectrum.
GraphModel model_from_json(const nlohmann::json& j);
SolverConfig solver_from_json(const nlohmann::json& j);
MethodSpec method_from_json(const nlohmann::json& j);
ExperimentSpec spec_from_json(const nlohmann::json& j);

nlohmann::json load_json_file(const std::string& path);
ExperimentSpec load_experiment_spec(const std::string& path);

} // namespace mgl

#pragma once

#include <json.hpp>

#include "harness.hpp"
#include "problem.hpp"

namespace tbp {

// Problem documents: {"arms": [{"kind": ...}...], "tau": number|array,
// "epsilon": number} or the preset shorthand {"preset": ..., "family": ...,
// "geometric_d"?: number}. Errors are ConfigError with a field path.
nlohmann::json problem_to_json(const ThresholdProblem& problem);
ThresholdProblem problem_from_json(const nlohmann::json& doc,
                                   const std::string& path);

// Experiment configs: {"problem": <doc>} xor {"family": {"d": [...],
// "tau": number, "epsilon": number}}, plus policies, horizons, replications,
// master_seed (default 0) and mode (default threshold_loss).
nlohmann::json config_to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const nlohmann::json& doc);
ExperimentConfig config_from_json_text(const std::string& text);

}  // namespace tbp

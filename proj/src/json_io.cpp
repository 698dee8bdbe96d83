#include "json_io.hpp"

#include <stdexcept>

#include "errors.hpp"

namespace tbp {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw ConfigError(path + ": " + message);
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

const json& require(const json& doc, const char* key,
                    const std::string& path) {
  if (!doc.is_object()) fail(path, "expected an object");
  const auto it = doc.find(key);
  if (it == doc.end()) fail(join(path, key), "missing required field");
  return *it;
}

double require_number(const json& doc, const char* key,
                      const std::string& path) {
  const json& value = require(doc, key, path);
  if (!value.is_number()) fail(join(path, key), "expected a number");
  return value.get<double>();
}

std::string require_string(const json& doc, const char* key,
                           const std::string& path) {
  const json& value = require(doc, key, path);
  if (!value.is_string()) fail(join(path, key), "expected a string");
  return value.get<std::string>();
}

const json& require_array(const json& doc, const char* key,
                          const std::string& path) {
  const json& value = require(doc, key, path);
  if (!value.is_array()) fail(join(path, key), "expected an array");
  return value;
}

ArmModel arm_from_json(const json& doc, const std::string& path) {
  const std::string kind = require_string(doc, "kind", path);
  try {
    if (kind == "bernoulli") {
      return ArmModel::bernoulli(require_number(doc, "p", path));
    }
    if (kind == "gaussian") {
      return ArmModel::gaussian(require_number(doc, "mean", path),
                                require_number(doc, "variance", path));
    }
    if (kind == "level_set") {
      const ArmModel base =
          arm_from_json(require(doc, "base", path), join(path, "base"));
      return transform_level_set(base, require_number(doc, "level", path));
    }
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
  fail(join(path, "kind"), "unknown kind '" + kind + "'");
}

json arm_to_json(const ArmModel& arm) {
  switch (arm.kind()) {
    case ArmKind::bernoulli:
      return {{"kind", "bernoulli"}, {"p", arm.p()}};
    case ArmKind::gaussian:
      return {{"kind", "gaussian"},
              {"mean", arm.mean()},
              {"variance", arm.variance()}};
    case ArmKind::level_set:
      return {{"kind", "level_set"},
              {"base", arm_to_json(arm.base())},
              {"level", arm.level()}};
  }
  return {};
}

}  // namespace

json problem_to_json(const ThresholdProblem& problem) {
  json arms = json::array();
  for (const auto& arm : problem.arms()) arms.push_back(arm_to_json(arm));
  json tau;
  if (problem.has_scalar_tau()) {
    tau = problem.tau();
  } else {
    tau = json::array();
    for (const double t : problem.taus()) tau.push_back(t);
  }
  return {{"arms", std::move(arms)},
          {"tau", std::move(tau)},
          {"epsilon", problem.epsilon()}};
}

ThresholdProblem problem_from_json(const json& doc, const std::string& path) {
  if (!doc.is_object()) fail(path, "expected an object");

  if (doc.contains("preset")) {
    const std::string name = require_string(doc, "preset", path);
    const std::string family = require_string(doc, "family", path);
    double geometric_d = 0.2;
    if (doc.contains("geometric_d")) {
      geometric_d = require_number(doc, "geometric_d", path);
    }
    try {
      return preset(name, family, geometric_d);
    } catch (const std::invalid_argument& e) {
      fail(path, e.what());
    }
  }

  const json& arms_doc = require_array(doc, "arms", path);
  std::vector<ArmModel> arms;
  arms.reserve(arms_doc.size());
  for (size_t i = 0; i < arms_doc.size(); ++i) {
    arms.push_back(arm_from_json(
        arms_doc[i], join(path, "arms[" + std::to_string(i) + "]")));
  }

  const json& tau = require(doc, "tau", path);
  const double epsilon = require_number(doc, "epsilon", path);
  try {
    if (tau.is_number()) {
      return ThresholdProblem(std::move(arms), tau.get<double>(), epsilon);
    }
    if (tau.is_array()) {
      std::vector<double> taus;
      taus.reserve(tau.size());
      for (size_t i = 0; i < tau.size(); ++i) {
        if (!tau[i].is_number()) {
          fail(join(path, "tau[" + std::to_string(i) + "]"),
               "expected a number");
        }
        taus.push_back(tau[i].get<double>());
      }
      return ThresholdProblem(std::move(arms), std::move(taus), epsilon);
    }
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
  fail(join(path, "tau"), "expected a number or an array of numbers");
}

ThresholdProblem problem_from_json_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("problem: invalid JSON: ") + e.what());
  }
  return problem_from_json(doc, "problem");
}

std::string problem_to_json_text(const ThresholdProblem& problem) {
  return problem_to_json(problem).dump(2) + "\n";
}

json config_to_json(const ExperimentConfig& config) {
  json doc;
  if (std::holds_alternative<std::monostate>(config.problem)) {
    fail("problem", "one of 'problem' or 'family' is required");
  }
  if (std::holds_alternative<ThresholdProblem>(config.problem)) {
    doc["problem"] = problem_to_json(std::get<ThresholdProblem>(config.problem));
  } else {
    const auto& fam = std::get<ProblemFamily>(config.problem);
    doc["family"] = {
        {"d", fam.d}, {"tau", fam.tau}, {"epsilon", fam.epsilon}};
  }
  doc["policies"] = config.policies;
  doc["horizons"] = config.horizons;
  doc["replications"] = config.replications;
  doc["master_seed"] = config.master_seed;
  doc["mode"] = mode_name(config.mode);
  return doc;
}

ExperimentConfig config_from_json(const json& doc) {
  if (!doc.is_object()) fail("config", "expected an object");
  const bool has_problem = doc.contains("problem");
  const bool has_family = doc.contains("family");
  if (has_problem == has_family) {
    fail("config", "specify exactly one of 'problem' and 'family'");
  }

  ExperimentConfig config;
  if (has_problem) {
    config.problem = problem_from_json(doc.at("problem"), "problem");
  } else {
    const json& fam = doc.at("family");
    const json& d_doc = require_array(fam, "d", "family");
    std::vector<double> d;
    d.reserve(d_doc.size());
    for (size_t i = 0; i < d_doc.size(); ++i) {
      if (!d_doc[i].is_number()) {
        fail("family.d[" + std::to_string(i) + "]", "expected a number");
      }
      d.push_back(d_doc[i].get<double>());
    }
    const double tau = require_number(fam, "tau", "family");
    const double epsilon = require_number(fam, "epsilon", "family");
    try {
      config.problem = lower_bound_family(d, tau, epsilon);
    } catch (const std::exception& e) {
      fail("family", e.what());
    }
  }

  const json& policies = require_array(doc, "policies", "");
  for (size_t i = 0; i < policies.size(); ++i) {
    if (!policies[i].is_string()) {
      fail("policies[" + std::to_string(i) + "]", "expected a string");
    }
    const auto id = policies[i].get<std::string>();
    try {
      make_policy(id);
    } catch (const std::invalid_argument& e) {
      fail("policies[" + std::to_string(i) + "]", e.what());
    }
    config.policies.push_back(id);
  }

  const json& horizons = require_array(doc, "horizons", "");
  for (size_t i = 0; i < horizons.size(); ++i) {
    if (!horizons[i].is_number_integer()) {
      fail("horizons[" + std::to_string(i) + "]", "expected an integer");
    }
    config.horizons.push_back(horizons[i].get<int64_t>());
  }

  const json& replications = require(doc, "replications", "");
  if (!replications.is_number_integer()) {
    fail("replications", "expected an integer");
  }
  config.replications = replications.get<int64_t>();

  if (doc.contains("master_seed")) {
    const json& seed = doc.at("master_seed");
    if (!seed.is_number_integer() ||
        (seed.is_number_integer() && !seed.is_number_unsigned() &&
         seed.get<int64_t>() < 0)) {
      fail("master_seed", "expected a nonnegative integer");
    }
    config.master_seed = seed.get<uint64_t>();
  }

  if (doc.contains("mode")) {
    const json& mode = doc.at("mode");
    if (!mode.is_string()) fail("mode", "expected a string");
    try {
      config.mode = mode_from_name(mode.get<std::string>());
    } catch (const std::invalid_argument& e) {
      fail("mode", e.what());
    }
  }
  return config;
}

ExperimentConfig config_from_json_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  return config_from_json(doc);
}

}  // namespace tbp

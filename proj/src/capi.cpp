#include "tbp.h"

#include <cstdlib>
#include <cstring>
#include <stdexcept>
#include <string>

#include "errors.hpp"
#include "export.hpp"
#include "harness.hpp"
#include "json_io.hpp"
#include "policies.hpp"
#include "problem.hpp"

struct tbp_problem {
  tbp::ThresholdProblem impl;
};

struct tbp_result {
  tbp::ExperimentResult impl;
};

namespace {

thread_local std::string g_last_error;

tbp_status set_error(tbp_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

// Exceptions cross the C boundary as status codes. Unknown-name errors
// (preset, family, policy id) surface as PARSE; other invalid_argument as
// INVALID_ARGUMENT.
tbp_status status_from_exception() {
  try {
    throw;
  } catch (const tbp::BudgetError& e) {
    return set_error(TBP_ERR_BUDGET, e.what());
  } catch (const tbp::ConfigError& e) {
    return set_error(TBP_ERR_CONFIG, e.what());
  } catch (const std::domain_error& e) {
    return set_error(TBP_ERR_DOMAIN, e.what());
  } catch (const std::invalid_argument& e) {
    const std::string what = e.what();
    if (what.find("unknown") != std::string::npos) {
      return set_error(TBP_ERR_PARSE, what);
    }
    return set_error(TBP_ERR_INVALID_ARGUMENT, what);
  } catch (const std::exception& e) {
    return set_error(TBP_ERR_INTERNAL, e.what());
  } catch (...) {
    return set_error(TBP_ERR_INTERNAL, "unknown error");
  }
}

tbp_status copy_string(const std::string& text, char** out) {
  char* buffer = static_cast<char*>(std::malloc(text.size() + 1));
  if (!buffer) return set_error(TBP_ERR_INTERNAL, "out of memory");
  std::memcpy(buffer, text.c_str(), text.size() + 1);
  *out = buffer;
  return TBP_OK;
}

tbp_status require(bool ok, const char* message) {
  return ok ? TBP_OK : set_error(TBP_ERR_INVALID_ARGUMENT, message);
}

}  // namespace

extern "C" {

const char* tbp_version(void) { return "0.1.0"; }

const char* tbp_last_error(void) { return g_last_error.c_str(); }

void tbp_string_free(char* s) { std::free(s); }

tbp_status tbp_problem_preset(const char* name, const char* family,
                              tbp_problem** out) {
  if (tbp_status s = require(name && family && out, "null argument")) return s;
  try {
    *out = new tbp_problem{tbp::preset(name, family)};
    return TBP_OK;
  } catch (...) {
    return status_from_exception();
  }
}

tbp_status tbp_problem_from_json(const char* json_text, tbp_problem** out) {
  if (tbp_status s = require(json_text && out, "null argument")) return s;
  try {
    *out = new tbp_problem{tbp::problem_from_json_text(json_text)};
    return TBP_OK;
  } catch (...) {
    return status_from_exception();
  }
}

tbp_status tbp_problem_to_json(const tbp_problem* problem, char** out) {
  if (tbp_status s = require(problem && out, "null argument")) return s;
  try {
    return copy_string(tbp::problem_to_json_text(problem->impl), out);
  } catch (...) {
    return status_from_exception();
  }
}

size_t tbp_problem_num_arms(const tbp_problem* problem) {
  return problem ? problem->impl.num_arms() : 0;
}

tbp_status tbp_problem_true_mean(const tbp_problem* problem, size_t arm,
                                 double* out) {
  if (tbp_status s = require(problem && out, "null argument")) return s;
  if (tbp_status s = require(arm < problem->impl.num_arms(), "arm out of range"))
    return s;
  *out = problem->impl.arm(arm).true_mean();
  return TBP_OK;
}

tbp_status tbp_problem_gap(const tbp_problem* problem, size_t arm,
                           double* out) {
  if (tbp_status s = require(problem && out, "null argument")) return s;
  if (tbp_status s = require(arm < problem->impl.num_arms(), "arm out of range"))
    return s;
  *out = problem->impl.gap(arm);
  return TBP_OK;
}

tbp_status tbp_problem_complexity(const tbp_problem* problem, double* out) {
  if (tbp_status s = require(problem && out, "null argument")) return s;
  try {
    *out = problem->impl.complexity();
    return TBP_OK;
  } catch (...) {
    return status_from_exception();
  }
}

void tbp_problem_free(tbp_problem* problem) { delete problem; }

tbp_status tbp_run_game(const tbp_problem* problem, const char* policy_id,
                        int64_t horizon, uint64_t seed, uint64_t stream_id,
                        int64_t* pulls, int* accepted, double* reward_sum) {
  if (tbp_status s = require(problem && policy_id, "null argument")) return s;
  try {
    const auto policy = tbp::make_policy(policy_id);
    tbp::Rng rng(seed, stream_id);
    const tbp::GameResult game =
        tbp::run_game(*policy, problem->impl, horizon, rng);
    const size_t k = problem->impl.num_arms();
    for (size_t i = 0; i < k; ++i) {
      if (pulls) pulls[i] = game.state.pulls[i];
      if (accepted) accepted[i] = game.output.accepted(i) ? 1 : 0;
    }
    if (reward_sum) *reward_sum = game.reward_sum;
    return TBP_OK;
  } catch (...) {
    return status_from_exception();
  }
}

tbp_status tbp_config_validate(const char* config_json) {
  if (tbp_status s = require(config_json != nullptr, "null argument")) return s;
  try {
    tbp::validate_config(tbp::config_from_json_text(config_json));
    return TBP_OK;
  } catch (...) {
    return status_from_exception();
  }
}

tbp_status tbp_experiment_run(const char* config_json, int threads,
                              tbp_result** out) {
  if (tbp_status s = require(config_json && out, "null argument")) return s;
  try {
    *out = new tbp_result{
        tbp::run_experiment(tbp::config_from_json_text(config_json), threads)};
    return TBP_OK;
  } catch (...) {
    return status_from_exception();
  }
}

size_t tbp_result_num_cells(const tbp_result* result) {
  return result ? result->impl.cells.size() : 0;
}

tbp_status tbp_result_cell(const tbp_result* result, size_t index,
                           tbp_cell* out) {
  if (tbp_status s = require(result && out, "null argument")) return s;
  if (tbp_status s =
          require(index < result->impl.cells.size(), "cell out of range"))
    return s;
  const tbp::Cell& cell = result->impl.cells[index];
  out->policy = cell.policy.c_str();
  out->horizon = cell.horizon;
  out->replications = cell.replications;
  out->value = cell.value;
  out->ci_half_width = cell.half_width;
  out->censored = cell.censored ? 1 : 0;
  out->wall_time_ms = cell.wall_time_ms;
  return TBP_OK;
}

tbp_status tbp_result_to_csv(const tbp_result* result, char** out) {
  if (tbp_status s = require(result && out, "null argument")) return s;
  try {
    return copy_string(tbp::to_csv(result->impl), out);
  } catch (...) {
    return status_from_exception();
  }
}

tbp_status tbp_result_to_json(const tbp_result* result, char** out) {
  if (tbp_status s = require(result && out, "null argument")) return s;
  try {
    return copy_string(tbp::to_json_text(result->impl), out);
  } catch (...) {
    return status_from_exception();
  }
}

tbp_status tbp_result_to_svg(const tbp_result* result, char** out) {
  if (tbp_status s = require(result && out, "null argument")) return s;
  try {
    return copy_string(tbp::to_svg(result->impl), out);
  } catch (...) {
    return status_from_exception();
  }
}

void tbp_result_free(tbp_result* result) { delete result; }

}  // extern "C"

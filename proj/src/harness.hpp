#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "policies.hpp"
#include "problem.hpp"

namespace tbp {

enum class Mode { threshold_loss, best_arm_error, cumulative_regret };

std::string mode_name(Mode mode);
Mode mode_from_name(const std::string& name);

struct ExperimentConfig {
  // monostate = not set yet; validate_config rejects it.
  std::variant<std::monostate, ThresholdProblem, ProblemFamily> problem;
  std::vector<std::string> policies;
  std::vector<int64_t> horizons;  // strictly increasing
  int64_t replications = 0;
  uint64_t master_seed = 0;
  Mode mode = Mode::threshold_loss;

  bool operator==(const ExperimentConfig&) const = default;
};

/// One (policy, horizon) estimate. value is an error rate (loss modes) or a
/// mean pseudo-regret; half_width a 95% normal-approximation interval, with
/// the rule-of-three fallback 3/N when no failure was observed. censored
/// marks a value of exactly zero, which log-scale plots cannot place.
struct Cell {
  std::string policy;
  int64_t horizon = 0;
  int64_t replications = 0;
  double value = 0;
  double half_width = 0;
  bool censored = false;
  double wall_time_ms = 0;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::optional<double> complexity;  // H when defined for the run's problem
  std::vector<Cell> cells;
};

/// Schema-level checks already done by the JSON layer; this enforces the
/// semantic ones: policy/horizon budgets, family arity, mode preconditions.
/// Throws ConfigError, BudgetError or domain_error.
void validate_config(const ExperimentConfig& config);

/// Runs every (policy, horizon) cell; replications are independent games on
/// streams (master_seed, 0..N-1), reduced in replication order, so results
/// are bitwise identical for any thread count. threads <= 0 means all cores.
ExperimentResult run_experiment(const ExperimentConfig& config,
                                int threads = 0);

/// (error rate, half width) for one policy on one problem.
std::pair<double, double> estimate_error(const std::string& policy_id,
                                         const ThresholdProblem& problem,
                                         int64_t horizon, int64_t replications,
                                         uint64_t master_seed, int threads = 1);

/// APT pointed at the best arm: tau = mu*, epsilon = 0, recommendation by
/// pull count. Domain error unless the maximal mean is unique.
std::pair<double, double> estimate_best_arm_error(
    const ThresholdProblem& problem, int64_t horizon, int64_t replications,
    uint64_t master_seed, int threads = 1);

/// Mean pseudo-regret of the same best-arm game, from true means.
std::pair<double, double> estimate_pseudo_regret(
    const ThresholdProblem& problem, int64_t horizon, int64_t replications,
    uint64_t master_seed, int threads = 1);

/// The largest-mean arm; domain error if not unique.
size_t unique_best_arm(const ThresholdProblem& problem);

/// The same arms with tau = mu* and epsilon = 0.
ThresholdProblem best_arm_problem(const ThresholdProblem& problem);

struct SlopeFit {
  double slope = 0;
  double intercept = 0;
  std::vector<double> residuals;
};

/// OLS of log(error) on T over the positive-error points. Domain error with
/// fewer than 3 such points (raise replications or shrink the horizon grid).
SlopeFit decay_slope(std::span<const double> horizons,
                     std::span<const double> error_rates);

}  // namespace tbp

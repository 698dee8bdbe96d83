#include "harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "errors.hpp"

namespace tbp {

std::string mode_name(Mode mode) {
  switch (mode) {
    case Mode::threshold_loss:
      return "threshold_loss";
    case Mode::best_arm_error:
      return "best_arm_error";
    case Mode::cumulative_regret:
      return "cumulative_regret";
  }
  return "threshold_loss";
}

Mode mode_from_name(const std::string& name) {
  if (name == "threshold_loss") return Mode::threshold_loss;
  if (name == "best_arm_error") return Mode::best_arm_error;
  if (name == "cumulative_regret") return Mode::cumulative_regret;
  throw std::invalid_argument(
      "must be one of threshold_loss, best_arm_error, cumulative_regret");
}

namespace {

void parallel_for(int64_t n, int threads,
                  const std::function<void(int64_t)>& body) {
  if (threads <= 0) threads = int(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;
  const int workers = int(std::min<int64_t>(threads, n));
  if (workers <= 1) {
    for (int64_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int64_t> cursor{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  auto work = [&] {
    constexpr int64_t kChunk = 16;
    for (;;) {
      const int64_t begin = cursor.fetch_add(kChunk);
      if (begin >= n) return;
      const int64_t end = std::min(begin + kChunk, n);
      try {
        for (int64_t i = begin; i < end; ++i) body(i);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

struct CellSpec {
  std::string label;
  std::string policy_id;
  const ThresholdProblem* game = nullptr;
  Mode mode = Mode::threshold_loss;
  int64_t horizon = 0;
  int64_t replications = 0;
  uint64_t master_seed = 0;
  size_t best_arm = 0;             // best-arm / regret modes
  std::vector<double> true_means;  // regret mode
};

Cell run_cell(const CellSpec& spec, int threads) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<double> values(spec.replications);
  parallel_for(spec.replications, threads, [&](int64_t r) {
    Rng rng(spec.master_seed, uint64_t(r));
    const auto policy = make_policy(spec.policy_id);
    const GameResult game = run_game(*policy, *spec.game, spec.horizon, rng);
    switch (spec.mode) {
      case Mode::threshold_loss:
        values[r] = double(spec.game->loss(game.output));
        break;
      case Mode::best_arm_error:
        values[r] = best_arm_recommend(game.state) == spec.best_arm ? 0.0 : 1.0;
        break;
      case Mode::cumulative_regret:
        values[r] = pseudo_regret(game.state, spec.true_means, spec.best_arm);
        break;
    }
  });

  // Reduce in replication order: the estimate is a fixed function of the
  // seeds, never of the thread schedule.
  double sum = 0, sum_sq = 0;
  for (const double v : values) {
    sum += v;
    sum_sq += v * v;
  }
  const double n = double(spec.replications);
  const double mean = sum / n;
  double half_width;
  if (spec.mode == Mode::cumulative_regret) {
    double variance = 0;
    if (spec.replications > 1) {
      variance = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0));
    }
    half_width = 1.96 * std::sqrt(variance / n);
  } else if (mean == 0.0) {
    half_width = 3.0 / n;  // rule of three: nothing observed, CI [0, 3/N]
  } else {
    half_width = 1.96 * std::sqrt(mean * (1.0 - mean) / n);
  }
  const auto stop = std::chrono::steady_clock::now();
  const double ms =
      std::chrono::duration<double, std::milli>(stop - start).count();
  return Cell{spec.label,  spec.horizon, spec.replications, mean,
              half_width,  mean == 0.0,  ms};
}

}  // namespace

size_t unique_best_arm(const ThresholdProblem& problem) {
  const auto means = problem.true_means();
  size_t best = 0;
  for (size_t i = 1; i < means.size(); ++i) {
    if (means[i] > means[best]) best = i;
  }
  for (size_t i = 0; i < means.size(); ++i) {
    if (i != best && means[i] == means[best]) {
      throw std::domain_error("best arm is not unique");
    }
  }
  return best;
}

ThresholdProblem best_arm_problem(const ThresholdProblem& problem) {
  const size_t best = unique_best_arm(problem);
  return ThresholdProblem(problem.arms(),
                          problem.arm(best).true_mean(), 0.0);
}

void validate_config(const ExperimentConfig& config) {
  if (std::holds_alternative<std::monostate>(config.problem)) {
    throw ConfigError("problem: one of 'problem' or 'family' is required");
  }
  if (config.policies.empty()) {
    throw ConfigError("policies: need at least one policy");
  }
  if (config.horizons.empty()) {
    throw ConfigError("horizons: need at least one horizon");
  }
  for (size_t i = 0; i < config.horizons.size(); ++i) {
    if (config.horizons[i] < 1) {
      throw ConfigError("horizons[" + std::to_string(i) + "]: must be >= 1");
    }
    if (i > 0 && config.horizons[i] <= config.horizons[i - 1]) {
      throw ConfigError("horizons: must be strictly increasing");
    }
  }
  if (config.replications < 1) {
    throw ConfigError("replications: must be >= 1");
  }

  const bool family = std::holds_alternative<ProblemFamily>(config.problem);
  if (family) {
    if (config.policies.size() != 1) {
      throw ConfigError("policies: family sweeps take exactly one policy");
    }
    if (config.mode != Mode::threshold_loss) {
      throw ConfigError("mode: family sweeps support threshold_loss only");
    }
  }
  const size_t k =
      family ? std::get<ProblemFamily>(config.problem).problems[0].num_arms()
             : std::get<ThresholdProblem>(config.problem).num_arms();

  bool wants_complexity = false;
  for (size_t i = 0; i < config.policies.size(); ++i) {
    std::unique_ptr<Policy> policy;
    try {
      policy = make_policy(config.policies[i]);
    } catch (const std::invalid_argument& e) {
      throw ConfigError("policies[" + std::to_string(i) + "]: " + e.what());
    }
    if (config.policies[i].rfind("ucbe", 0) == 0) wants_complexity = true;
    for (const int64_t horizon : config.horizons) {
      if (horizon < policy->min_horizon(k)) {
        throw BudgetError(budget_error_message(*policy, horizon, k));
      }
    }
  }

  if (!family) {
    const auto& problem = std::get<ThresholdProblem>(config.problem);
    if (config.mode != Mode::threshold_loss) {
      unique_best_arm(problem);  // domain_error when tied
    }
    if (wants_complexity) {
      const ThresholdProblem game = config.mode == Mode::threshold_loss
                                        ? problem
                                        : best_arm_problem(problem);
      game.complexity();  // domain_error when some gap is zero
    }
  }
}

ExperimentResult run_experiment(const ExperimentConfig& config, int threads) {
  validate_config(config);
  ExperimentResult result;
  result.config = config;

  if (std::holds_alternative<ProblemFamily>(config.problem)) {
    const auto& fam = std::get<ProblemFamily>(config.problem);
    result.complexity = fam.shared_complexity;
    for (const int64_t horizon : config.horizons) {
      const size_t first = result.cells.size();
      for (size_t m = 0; m < fam.problems.size(); ++m) {
        CellSpec spec;
        spec.label = "member:" + std::to_string(m);
        spec.policy_id = config.policies[0];
        spec.game = &fam.problems[m];
        spec.horizon = horizon;
        spec.replications = config.replications;
        spec.master_seed = config.master_seed;
        result.cells.push_back(run_cell(spec, threads));
      }
      size_t worst = first;
      for (size_t i = first; i < result.cells.size(); ++i) {
        if (result.cells[i].value > result.cells[worst].value) worst = i;
      }
      Cell max_cell = result.cells[worst];
      max_cell.policy = "max";
      result.cells.push_back(std::move(max_cell));
    }
    return result;
  }

  const auto& problem = std::get<ThresholdProblem>(config.problem);
  const ThresholdProblem game = config.mode == Mode::threshold_loss
                                    ? problem
                                    : best_arm_problem(problem);
  try {
    result.complexity = game.complexity();
  } catch (const std::domain_error&) {
    result.complexity = std::nullopt;
  }

  CellSpec spec;
  spec.game = &game;
  spec.mode = config.mode;
  spec.replications = config.replications;
  spec.master_seed = config.master_seed;
  if (config.mode != Mode::threshold_loss) {
    spec.best_arm = unique_best_arm(problem);
    spec.true_means = problem.true_means();
  }
  for (const auto& policy_id : config.policies) {
    spec.label = policy_id;
    spec.policy_id = policy_id;
    for (const int64_t horizon : config.horizons) {
      spec.horizon = horizon;
      result.cells.push_back(run_cell(spec, threads));
    }
  }
  return result;
}

std::pair<double, double> estimate_error(const std::string& policy_id,
                                         const ThresholdProblem& problem,
                                         int64_t horizon, int64_t replications,
                                         uint64_t master_seed, int threads) {
  CellSpec spec;
  spec.label = policy_id;
  spec.policy_id = policy_id;
  spec.game = &problem;
  spec.horizon = horizon;
  spec.replications = replications;
  spec.master_seed = master_seed;
  const Cell cell = run_cell(spec, threads);
  return {cell.value, cell.half_width};
}

std::pair<double, double> estimate_best_arm_error(
    const ThresholdProblem& problem, int64_t horizon, int64_t replications,
    uint64_t master_seed, int threads) {
  const ThresholdProblem game = best_arm_problem(problem);
  CellSpec spec;
  spec.label = "apt";
  spec.policy_id = "apt";
  spec.game = &game;
  spec.mode = Mode::best_arm_error;
  spec.horizon = horizon;
  spec.replications = replications;
  spec.master_seed = master_seed;
  spec.best_arm = unique_best_arm(problem);
  const Cell cell = run_cell(spec, threads);
  return {cell.value, cell.half_width};
}

std::pair<double, double> estimate_pseudo_regret(
    const ThresholdProblem& problem, int64_t horizon, int64_t replications,
    uint64_t master_seed, int threads) {
  const ThresholdProblem game = best_arm_problem(problem);
  CellSpec spec;
  spec.label = "apt";
  spec.policy_id = "apt";
  spec.game = &game;
  spec.mode = Mode::cumulative_regret;
  spec.horizon = horizon;
  spec.replications = replications;
  spec.master_seed = master_seed;
  spec.best_arm = unique_best_arm(problem);
  spec.true_means = problem.true_means();
  const Cell cell = run_cell(spec, threads);
  return {cell.value, cell.half_width};
}

SlopeFit decay_slope(std::span<const double> horizons,
                     std::span<const double> error_rates) {
  if (horizons.size() != error_rates.size()) {
    throw std::invalid_argument("decay_slope needs matched grids");
  }
  std::vector<double> xs, ys;
  for (size_t i = 0; i < horizons.size(); ++i) {
    if (error_rates[i] > 0.0) {
      xs.push_back(horizons[i]);
      ys.push_back(std::log(error_rates[i]));
    }
  }
  if (xs.size() < 3) {
    throw std::domain_error(
        "need at least 3 positive-error points for a slope; raise "
        "replications or shrink the horizon grid");
  }
  const double n = double(xs.size());
  double x_bar = 0, y_bar = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    x_bar += xs[i];
    y_bar += ys[i];
  }
  x_bar /= n;
  y_bar /= n;
  double sxx = 0, sxy = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - x_bar) * (xs[i] - x_bar);
    sxy += (xs[i] - x_bar) * (ys[i] - y_bar);
  }
  SlopeFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = y_bar - fit.slope * x_bar;
  fit.residuals.resize(xs.size());
  for (size_t i = 0; i < xs.size(); ++i) {
    fit.residuals[i] = ys[i] - (fit.intercept + fit.slope * xs[i]);
  }
  return fit;
}

}  // namespace tbp

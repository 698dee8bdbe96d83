#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "problem.hpp"
#include "rng.hpp"

namespace tbp {

/// Per-arm pull counts and reward sums for one game. t == sum of pulls at
/// all times.
struct RunState {
  explicit RunState(size_t num_arms) : pulls(num_arms, 0), sums(num_arms, 0) {}

  std::vector<int64_t> pulls;
  std::vector<double> sums;
  int64_t t = 0;

  size_t num_arms() const { return pulls.size(); }

  double mean(size_t arm) const;  // domain_error if the arm is unpulled

  void record(size_t arm, double reward) {
    pulls.at(arm) += 1;
    sums.at(arm) += reward;
    ++t;
  }
};

/// sqrt(T_i) * (|mean_i - tau| + epsilon). Domain error on an unpulled arm.
double apt_index(const RunState& state, size_t arm, double tau, double epsilon);

/// Argmin of the index over arms, every arm pulled at least once. Ties break
/// to the lowest index (strict-< scan in ascending order), as everywhere.
size_t apt_select(const RunState& state, std::span<const double> taus,
                  double epsilon);
size_t apt_select(const RunState& state, double tau, double epsilon);

/// Accept exactly the arms with empirical mean >= tau (unpulled arms are
/// rejected).
OutputSet threshold_recommend(const RunState& state,
                              std::span<const double> taus);

size_t ua_select(const RunState& state, Rng& rng);

/// Argmin over arms of (|mean_k - tau| + epsilon) - sqrt(a / T_k).
size_t ucbe_select(const RunState& state, std::span<const double> taus,
                   double epsilon, double a);
size_t ucbe_select(const RunState& state, double tau, double epsilon, double a);

/// Most-pulled arm, ties to the lowest index.
size_t best_arm_recommend(const RunState& state);

/// Sum over suboptimal arms of (mu_star - mu_i) * pulls_i.
double pseudo_regret(const RunState& state, std::span<const double> true_means,
                     size_t best_arm);

/// Cumulative per-arm pull targets for the K elimination phases:
/// n_k = ceil((1/logbar(K)) * (T-K) / (K+1-k)), logbar(K) = 1/2 + sum_{i=2..K} 1/i,
/// clamped to >= 1 and nondecreasing in k.
std::vector<int64_t> csar_phase_targets(size_t num_arms, int64_t horizon);

/// One bandit policy instance; holds per-game mutable state, so use a fresh
/// instance (or call begin again) for every game.
class Policy {
 public:
  virtual ~Policy() = default;

  virtual const std::string& id() const = 0;

  /// Smallest playable horizon for a K-arm problem.
  virtual int64_t min_horizon(size_t num_arms) const = 0;
  /// min_horizon as a formula over K, for error messages ("2K", "K", "1").
  virtual const char* min_horizon_rule() const = 0;

  virtual void begin(const ThresholdProblem& problem, int64_t horizon) = 0;
  virtual size_t select(const RunState& state, Rng& rng) = 0;
  virtual void after_pull(const RunState& state, size_t arm) { (void)state, (void)arm; }
  virtual OutputSet recommend(const RunState& state) const = 0;
};

/// APT: first K pulls are arms 0..K-1 in order, then argmin of apt_index.
class AptPolicy : public Policy {
 public:
  const std::string& id() const override;
  int64_t min_horizon(size_t num_arms) const override {
    return 2 * int64_t(num_arms);
  }
  const char* min_horizon_rule() const override { return "2K"; }
  void begin(const ThresholdProblem& problem, int64_t horizon) override;
  size_t select(const RunState& state, Rng& rng) override;
  void after_pull(const RunState& state, size_t arm) override;
  OutputSet recommend(const RunState& state) const override;

 private:
  const ThresholdProblem* problem_ = nullptr;
  std::vector<double> indices_;
};

class UaPolicy : public Policy {
 public:
  const std::string& id() const override;
  int64_t min_horizon(size_t) const override { return 1; }
  const char* min_horizon_rule() const override { return "1"; }
  void begin(const ThresholdProblem& problem, int64_t horizon) override;
  size_t select(const RunState& state, Rng& rng) override;
  OutputSet recommend(const RunState& state) const override;

 private:
  const ThresholdProblem* problem_ = nullptr;
};

/// UCBE adapted to thresholding. In exponent mode the exploration constant
/// is a = 4^exponent * (T - K) / H with H the problem complexity, fixed at
/// begin(); a can also be pinned directly for tests.
class UcbePolicy : public Policy {
 public:
  explicit UcbePolicy(int exponent);
  static UcbePolicy with_fixed_a(double a);

  const std::string& id() const override { return id_; }
  int64_t min_horizon(size_t num_arms) const override {
    return 2 * int64_t(num_arms);
  }
  const char* min_horizon_rule() const override { return "2K"; }
  void begin(const ThresholdProblem& problem, int64_t horizon) override;
  size_t select(const RunState& state, Rng& rng) override;
  void after_pull(const RunState& state, size_t arm) override;
  OutputSet recommend(const RunState& state) const override;

  double a() const { return a_; }

 private:
  UcbePolicy() = default;

  std::string id_ = "ucbe";
  bool fixed_a_ = false;
  int exponent_ = 0;
  double a_ = 0;
  const ThresholdProblem* problem_ = nullptr;
  std::vector<double> indices_;
};

/// Successive accepts-and-rejects: K phases with cumulative targets from
/// csar_phase_targets, filled breadth-first over the still-active arms; at
/// each phase end the active arm maximizing |mean - tau| is classified
/// (accept iff mean >= tau) and frozen. If the horizon ends mid-phase the
/// remaining arms are classified the same way on the means at that point;
/// if the schedule ends early, surplus pulls go to the last classified arm.
class CsarPolicy : public Policy {
 public:
  const std::string& id() const override;
  int64_t min_horizon(size_t num_arms) const override {
    return int64_t(num_arms);
  }
  const char* min_horizon_rule() const override { return "K"; }
  void begin(const ThresholdProblem& problem, int64_t horizon) override;
  size_t select(const RunState& state, Rng& rng) override;
  void after_pull(const RunState& state, size_t arm) override;
  OutputSet recommend(const RunState& state) const override;

 private:
  size_t classify_pick(const RunState& state,
                       const std::vector<uint8_t>& active) const;

  const ThresholdProblem* problem_ = nullptr;
  std::vector<int64_t> targets_;
  std::vector<uint8_t> active_;
  std::vector<uint8_t> decided_;
  std::vector<uint8_t> accepted_;
  size_t phase_ = 0;
  size_t classified_ = 0;
  size_t last_classified_ = 0;
};

/// Policy ids: "apt", "ua", "ucbe:<i>" (integer exponent), "csar".
std::unique_ptr<Policy> make_policy(const std::string& id);

std::string budget_error_message(const Policy& policy, int64_t horizon,
                                 size_t num_arms);

struct GameResult {
  OutputSet output;
  RunState state;
  double reward_sum = 0;
};

/// Plays exactly `horizon` pulls and asks the policy for its output set.
/// BudgetError if horizon < policy.min_horizon(K).
GameResult run_game(Policy& policy, const ThresholdProblem& problem,
                    int64_t horizon, Rng& rng);

/// Full elimination run on one problem; at most `horizon` pulls.
OutputSet csar_run(const ThresholdProblem& problem, int64_t horizon, Rng& rng);

}  // namespace tbp

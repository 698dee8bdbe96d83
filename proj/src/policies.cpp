#include "policies.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

#include "errors.hpp"

namespace tbp {

double RunState::mean(size_t arm) const {
  if (pulls.at(arm) <= 0) {
    throw std::domain_error("mean of unpulled arm " + std::to_string(arm));
  }
  return sums[arm] / double(pulls[arm]);
}

double apt_index(const RunState& state, size_t arm, double tau,
                 double epsilon) {
  if (state.pulls.at(arm) <= 0) {
    throw std::domain_error("apt_index of unpulled arm " + std::to_string(arm));
  }
  const double mean = state.sums[arm] / double(state.pulls[arm]);
  return std::sqrt(double(state.pulls[arm])) *
         (std::abs(mean - tau) + epsilon);
}

namespace {

size_t argmin(std::span<const double> xs) {
  size_t best = 0;
  for (size_t i = 1; i < xs.size(); ++i) {
    if (xs[i] < xs[best]) best = i;
  }
  return best;
}

}  // namespace

size_t apt_select(const RunState& state, std::span<const double> taus,
                  double epsilon) {
  std::vector<double> idx(state.num_arms());
  for (size_t i = 0; i < idx.size(); ++i) {
    idx[i] = apt_index(state, i, taus[i], epsilon);
  }
  return argmin(idx);
}

size_t apt_select(const RunState& state, double tau, double epsilon) {
  const std::vector<double> taus(state.num_arms(), tau);
  return apt_select(state, taus, epsilon);
}

OutputSet threshold_recommend(const RunState& state,
                              std::span<const double> taus) {
  OutputSet out(state.num_arms());
  for (size_t i = 0; i < state.num_arms(); ++i) {
    out.set_accepted(i, state.pulls[i] > 0 && state.mean(i) >= taus[i]);
  }
  return out;
}

size_t ua_select(const RunState& state, Rng& rng) {
  return rng.next_index(state.num_arms());
}

size_t ucbe_select(const RunState& state, std::span<const double> taus,
                   double epsilon, double a) {
  std::vector<double> idx(state.num_arms());
  for (size_t i = 0; i < state.num_arms(); ++i) {
    if (state.pulls[i] <= 0) {
      throw std::domain_error("ucbe_select with unpulled arm " +
                              std::to_string(i));
    }
    idx[i] = std::abs(state.mean(i) - taus[i]) + epsilon -
             std::sqrt(a / double(state.pulls[i]));
  }
  return argmin(idx);
}

size_t ucbe_select(const RunState& state, double tau, double epsilon,
                   double a) {
  const std::vector<double> taus(state.num_arms(), tau);
  return ucbe_select(state, taus, epsilon, a);
}

size_t best_arm_recommend(const RunState& state) {
  size_t best = 0;
  for (size_t i = 1; i < state.num_arms(); ++i) {
    if (state.pulls[i] > state.pulls[best]) best = i;
  }
  return best;
}

double pseudo_regret(const RunState& state, std::span<const double> true_means,
                     size_t best_arm) {
  double regret = 0;
  for (size_t i = 0; i < state.num_arms(); ++i) {
    if (i == best_arm) continue;
    regret += (true_means[best_arm] - true_means[i]) * double(state.pulls[i]);
  }
  return regret;
}

std::vector<int64_t> csar_phase_targets(size_t num_arms, int64_t horizon) {
  const size_t k = num_arms;
  double logbar = 0.5;
  for (size_t i = 2; i <= k; ++i) logbar += 1.0 / double(i);
  std::vector<int64_t> targets(k);
  int64_t prev = 0;
  for (size_t phase = 1; phase <= k; ++phase) {
    const double raw =
        std::ceil(double(horizon - int64_t(k)) / (logbar * double(k + 1 - phase)));
    int64_t n = std::max<int64_t>(int64_t(raw), 1);
    n = std::max(n, prev);
    targets[phase - 1] = n;
    prev = n;
  }
  return targets;
}

// ---------------------------------------------------------------------------
// APT

const std::string& AptPolicy::id() const {
  static const std::string kId = "apt";
  return kId;
}

void AptPolicy::begin(const ThresholdProblem& problem, int64_t) {
  problem_ = &problem;
  indices_.assign(problem.num_arms(), 0.0);
}

size_t AptPolicy::select(const RunState& state, Rng&) {
  if (state.t < int64_t(state.num_arms())) return size_t(state.t);
  return argmin(indices_);
}

void AptPolicy::after_pull(const RunState& state, size_t arm) {
  indices_[arm] =
      apt_index(state, arm, problem_->tau(arm), problem_->epsilon());
}

OutputSet AptPolicy::recommend(const RunState& state) const {
  return threshold_recommend(state, problem_->taus());
}

// ---------------------------------------------------------------------------
// Uniform allocation

const std::string& UaPolicy::id() const {
  static const std::string kId = "ua";
  return kId;
}

void UaPolicy::begin(const ThresholdProblem& problem, int64_t) {
  problem_ = &problem;
}

size_t UaPolicy::select(const RunState& state, Rng& rng) {
  return ua_select(state, rng);
}

OutputSet UaPolicy::recommend(const RunState& state) const {
  return threshold_recommend(state, problem_->taus());
}

// ---------------------------------------------------------------------------
// UCBE

UcbePolicy::UcbePolicy(int exponent)
    : id_("ucbe:" + std::to_string(exponent)), exponent_(exponent) {}

UcbePolicy UcbePolicy::with_fixed_a(double a) {
  UcbePolicy p;
  p.fixed_a_ = true;
  p.a_ = a;
  return p;
}

void UcbePolicy::begin(const ThresholdProblem& problem, int64_t horizon) {
  problem_ = &problem;
  indices_.assign(problem.num_arms(), 0.0);
  if (!fixed_a_) {
    // Oracle tuning: uses the true complexity of the instance.
    a_ = std::pow(4.0, exponent_) *
         double(horizon - int64_t(problem.num_arms())) / problem.complexity();
  }
}

size_t UcbePolicy::select(const RunState& state, Rng&) {
  if (state.t < int64_t(state.num_arms())) return size_t(state.t);
  return argmin(indices_);
}

void UcbePolicy::after_pull(const RunState& state, size_t arm) {
  indices_[arm] = std::abs(state.mean(arm) - problem_->tau(arm)) +
                  problem_->epsilon() -
                  std::sqrt(a_ / double(state.pulls[arm]));
}

OutputSet UcbePolicy::recommend(const RunState& state) const {
  return threshold_recommend(state, problem_->taus());
}

// ---------------------------------------------------------------------------
// CSAR

const std::string& CsarPolicy::id() const {
  static const std::string kId = "csar";
  return kId;
}

void CsarPolicy::begin(const ThresholdProblem& problem, int64_t horizon) {
  problem_ = &problem;
  targets_ = csar_phase_targets(problem.num_arms(), horizon);
  active_.assign(problem.num_arms(), 1);
  decided_.assign(problem.num_arms(), 0);
  accepted_.assign(problem.num_arms(), 0);
  phase_ = 0;
  classified_ = 0;
  last_classified_ = 0;
}

size_t CsarPolicy::classify_pick(const RunState& state,
                                 const std::vector<uint8_t>& active) const {
  size_t pick = active.size();
  double best = -1;
  for (size_t i = 0; i < active.size(); ++i) {
    if (!active[i]) continue;
    const double dist = std::abs(state.mean(i) - problem_->tau(i));
    if (pick == active.size() || dist > best) {
      pick = i;
      best = dist;
    }
  }
  return pick;
}

size_t CsarPolicy::select(const RunState& state, Rng&) {
  // Surplus budget after every arm is classified feeds the last decision's
  // arm; the decision itself stays frozen.
  if (classified_ == active_.size()) return last_classified_;
  // Breadth-first fill: still-active arm with the fewest pulls, lowest index
  // on ties.
  size_t pick = active_.size();
  for (size_t i = 0; i < active_.size(); ++i) {
    if (!active_[i]) continue;
    if (pick == active_.size() || state.pulls[i] < state.pulls[pick]) pick = i;
  }
  return pick;
}

void CsarPolicy::after_pull(const RunState& state, size_t) {
  const size_t k = active_.size();
  while (classified_ < k) {
    const int64_t target = targets_[phase_];
    bool phase_done = true;
    for (size_t i = 0; i < k; ++i) {
      if (active_[i] && state.pulls[i] < target) {
        phase_done = false;
        break;
      }
    }
    if (!phase_done) break;
    const size_t pick = classify_pick(state, active_);
    decided_[pick] = 1;
    accepted_[pick] = state.mean(pick) >= problem_->tau(pick) ? 1 : 0;
    active_[pick] = 0;
    last_classified_ = pick;
    ++classified_;
    if (phase_ + 1 < targets_.size()) ++phase_;
  }
}

OutputSet CsarPolicy::recommend(const RunState& state) const {
  OutputSet out(active_.size());
  for (size_t i = 0; i < active_.size(); ++i) {
    if (decided_[i]) out.set_accepted(i, accepted_[i] != 0);
  }
  // Horizon ended mid-phase: classify the leftovers on the means as they
  // stand, one "phase end" at a time.
  std::vector<uint8_t> remaining = active_;
  for (size_t n = classified_; n < active_.size(); ++n) {
    const size_t pick = classify_pick(state, remaining);
    out.set_accepted(pick, state.mean(pick) >= problem_->tau(pick));
    remaining[pick] = 0;
  }
  return out;
}

// ---------------------------------------------------------------------------

std::unique_ptr<Policy> make_policy(const std::string& id) {
  if (id == "apt") return std::make_unique<AptPolicy>();
  if (id == "ua") return std::make_unique<UaPolicy>();
  if (id == "csar") return std::make_unique<CsarPolicy>();
  if (id.rfind("ucbe:", 0) == 0) {
    const std::string_view suffix = std::string_view(id).substr(5);
    int exponent = 0;
    const auto [end, ec] = std::from_chars(
        suffix.data(), suffix.data() + suffix.size(), exponent);
    if (ec == std::errc() && end == suffix.data() + suffix.size()) {
      return std::make_unique<UcbePolicy>(exponent);
    }
  }
  throw std::invalid_argument("unknown policy id '" + id + "'");
}

std::string budget_error_message(const Policy& policy, int64_t horizon,
                                 size_t num_arms) {
  return "T must be >= " + std::string(policy.min_horizon_rule()) + " for " +
         policy.id() + " (T=" + std::to_string(horizon) +
         ", K=" + std::to_string(num_arms) + ")";
}

GameResult run_game(Policy& policy, const ThresholdProblem& problem,
                    int64_t horizon, Rng& rng) {
  const size_t k = problem.num_arms();
  if (horizon < policy.min_horizon(k)) {
    throw BudgetError(budget_error_message(policy, horizon, k));
  }
  policy.begin(problem, horizon);
  RunState state(k);
  double reward_sum = 0;
  for (int64_t t = 0; t < horizon; ++t) {
    const size_t arm = policy.select(state, rng);
    const double reward = problem.arm(arm).sample(rng);
    state.record(arm, reward);
    policy.after_pull(state, arm);
    reward_sum += reward;
  }
  return {policy.recommend(state), std::move(state), reward_sum};
}

OutputSet csar_run(const ThresholdProblem& problem, int64_t horizon, Rng& rng) {
  CsarPolicy policy;
  return run_game(policy, problem, horizon, rng).output;
}

}  // namespace tbp

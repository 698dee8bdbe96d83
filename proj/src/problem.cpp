#include "problem.hpp"

#include <cmath>
#include <stdexcept>

namespace tbp {

std::vector<size_t> OutputSet::accepted_indices() const {
  std::vector<size_t> out;
  for (size_t i = 0; i < accepted_.size(); ++i) {
    if (accepted_[i]) out.push_back(i);
  }
  return out;
}

double gap(double mu, double tau, double epsilon) {
  return std::abs(mu - tau) + epsilon;
}

ThresholdProblem::ThresholdProblem(std::vector<ArmModel> arms, double tau,
                                   double epsilon)
    : arms_(std::move(arms)),
      taus_(arms_.size(), tau),
      scalar_tau_(true),
      epsilon_(epsilon) {
  validate();
}

ThresholdProblem::ThresholdProblem(std::vector<ArmModel> arms,
                                   std::vector<double> taus, double epsilon)
    : arms_(std::move(arms)),
      taus_(std::move(taus)),
      scalar_tau_(false),
      epsilon_(epsilon) {
  validate();
}

void ThresholdProblem::validate() const {
  if (arms_.size() < 2) {
    throw std::invalid_argument("a problem needs at least two arms");
  }
  if (taus_.size() != arms_.size()) {
    throw std::invalid_argument("need one threshold per arm");
  }
  for (double t : taus_) {
    if (!std::isfinite(t)) throw std::invalid_argument("tau must be finite");
  }
  if (!(epsilon_ >= 0.0) || !std::isfinite(epsilon_)) {
    throw std::invalid_argument("epsilon must be >= 0");
  }
}

double ThresholdProblem::tau() const {
  if (!scalar_tau_) {
    throw std::invalid_argument("problem has per-arm thresholds");
  }
  return taus_[0];
}

std::vector<double> ThresholdProblem::true_means() const {
  std::vector<double> mu(arms_.size());
  for (size_t i = 0; i < arms_.size(); ++i) mu[i] = arms_[i].true_mean();
  return mu;
}

double ThresholdProblem::gap(size_t i) const {
  return tbp::gap(arms_.at(i).true_mean(), taus_[i], epsilon_);
}

double ThresholdProblem::complexity() const {
  double h = 0;
  for (size_t i = 0; i < arms_.size(); ++i) {
    const double g = gap(i);
    if (g == 0.0) {
      throw std::domain_error(
          "complexity undefined: arm " + std::to_string(i) +
          " has zero gap (epsilon = 0 and its mean equals tau)");
    }
    h += 1.0 / (g * g);
  }
  return h;
}

int ThresholdProblem::loss(const OutputSet& output) const {
  if (output.num_arms() != arms_.size()) {
    throw std::invalid_argument("output set arity does not match the problem");
  }
  for (size_t i = 0; i < arms_.size(); ++i) {
    const double mu = arms_[i].true_mean();
    if (mu >= taus_[i] + epsilon_ && !output.accepted(i)) return 1;
    if (mu < taus_[i] - epsilon_ && output.accepted(i)) return 1;
  }
  return 0;
}

OutputSet ThresholdProblem::oracle_output() const {
  OutputSet out(arms_.size());
  for (size_t i = 0; i < arms_.size(); ++i) {
    out.set_accepted(i, arms_[i].true_mean() >= taus_[i]);
  }
  return out;
}

namespace {

std::vector<double> preset_means(std::string_view name, double geometric_d) {
  if (name == "exp1") {
    return {0.1, 0.1, 0.1, 0.35, 0.45, 0.55, 0.65, 0.9, 0.9, 0.9};
  }
  if (name == "exp2") {
    return {0.2, 0.25, 0.3, 0.35, 0.45, 0.55, 0.65, 0.7, 0.75, 0.8};
  }
  if (name == "exp3") {
    if (!(geometric_d > 0.0 && geometric_d < 1.0)) {
      throw std::invalid_argument("exp3 geometric_d must be in (0,1)");
    }
    std::vector<double> mu;
    for (int k = 1; k <= 4; ++k) mu.push_back(0.4 - std::pow(0.2, k));
    mu.push_back(0.45);
    mu.push_back(0.55);
    for (int k = 4; k >= 1; --k) mu.push_back(0.6 + std::pow(geometric_d, k));
    return mu;
  }
  throw std::invalid_argument("unknown preset '" + std::string(name) + "'");
}

}  // namespace

ThresholdProblem preset(std::string_view name, std::string_view family,
                        double geometric_d) {
  const auto means = preset_means(name, geometric_d);
  std::vector<ArmModel> arms;
  arms.reserve(means.size());
  for (double mu : means) {
    if (family == "bernoulli") {
      arms.push_back(ArmModel::bernoulli(mu));
    } else if (family == "gaussian") {
      arms.push_back(ArmModel::gaussian(mu, 0.25));
    } else {
      throw std::invalid_argument("unknown family '" + std::string(family) +
                                  "'");
    }
  }
  return ThresholdProblem(std::move(arms), 0.5, 0.1);
}

ProblemFamily lower_bound_family(std::span<const double> d, double tau,
                                 double epsilon) {
  const size_t k = d.size();
  if (k < 2) throw std::invalid_argument("family needs at least two arms");
  for (double dj : d) {
    if (!(dj >= 0.0) || !std::isfinite(dj)) {
      throw std::invalid_argument("family distances must be >= 0");
    }
    if (dj + 2.0 * epsilon == 0.0) {
      throw std::domain_error("family member gap d_j + 2*epsilon is zero");
    }
  }

  ProblemFamily fam;
  fam.d.assign(d.begin(), d.end());
  fam.tau = tau;
  fam.epsilon = epsilon;
  for (size_t m = 0; m <= k; ++m) {
    std::vector<ArmModel> arms;
    arms.reserve(k);
    for (size_t j = 0; j < k; ++j) {
      const double mu = (m >= 1 && j == m - 1) ? tau - d[j] - epsilon
                                               : tau + d[j] + epsilon;
      arms.push_back(ArmModel::gaussian(mu, 1.0));
    }
    fam.problems.emplace_back(std::move(arms), tau, epsilon);
  }
  for (double dj : d) {
    const double g = dj + 2.0 * epsilon;
    fam.shared_complexity += 1.0 / (g * g);
  }
  return fam;
}

}  // namespace tbp

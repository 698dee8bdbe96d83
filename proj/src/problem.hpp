#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "distributions.hpp"

namespace tbp {

/// Accept/reject partition over the K arms of a problem.
class OutputSet {
 public:
  explicit OutputSet(size_t num_arms) : accepted_(num_arms, 0) {}

  size_t num_arms() const { return accepted_.size(); }
  bool accepted(size_t arm) const { return accepted_.at(arm) != 0; }
  void set_accepted(size_t arm, bool value) { accepted_.at(arm) = value ? 1 : 0; }
  std::vector<size_t> accepted_indices() const;

  bool operator==(const OutputSet&) const = default;

 private:
  std::vector<uint8_t> accepted_;
};

/// |mu - tau| + epsilon.
double gap(double mu, double tau, double epsilon);

/// K arms, a threshold per arm (usually one scalar), and a precision band.
/// An output set pays loss 1 iff it rejects an arm with mu >= tau + eps or
/// accepts an arm with mu < tau - eps; arms inside [tau - eps, tau + eps)
/// are free either way.
class ThresholdProblem {
 public:
  ThresholdProblem(std::vector<ArmModel> arms, double tau, double epsilon);
  ThresholdProblem(std::vector<ArmModel> arms, std::vector<double> taus,
                   double epsilon);

  size_t num_arms() const { return arms_.size(); }
  const ArmModel& arm(size_t i) const { return arms_.at(i); }
  const std::vector<ArmModel>& arms() const { return arms_; }
  bool has_scalar_tau() const { return scalar_tau_; }
  double tau() const;  // scalar form only
  double tau(size_t i) const { return taus_.at(i); }
  std::span<const double> taus() const { return taus_; }
  double epsilon() const { return epsilon_; }
  std::vector<double> true_means() const;

  double gap(size_t i) const;

  /// Sum of gap^-2 over arms. Domain error if some gap is zero (possible
  /// only when epsilon == 0 and a mean sits exactly on its threshold).
  double complexity() const;

  /// 0/1 loss of an output set against the true means.
  int loss(const OutputSet& output) const;

  /// The zero-loss set {i : mu_i >= tau_i}.
  OutputSet oracle_output() const;

  bool operator==(const ThresholdProblem&) const = default;

 private:
  void validate() const;

  std::vector<ArmModel> arms_;
  std::vector<double> taus_;
  bool scalar_tau_ = true;
  double epsilon_ = 0;
};

/// Named benchmark instances. name: exp1 | exp2 | exp3, family: bernoulli |
/// gaussian (Gaussian arms use variance 0.25). All use K=10, tau=0.5,
/// eps=0.1; exp3's two geometric mean ladders are parameterized by
/// geometric_d.
ThresholdProblem preset(std::string_view name, std::string_view family,
                        double geometric_d = 0.2);

/// K+1 problems sharing one complexity: member 0 puts arm j at
/// tau + d_j + epsilon; member m >= 1 flips arm m-1 to tau - d_{m-1} -
/// epsilon. Arms are Gaussian with unit variance.
struct ProblemFamily {
  std::vector<ThresholdProblem> problems;
  double shared_complexity = 0;
  std::vector<double> d;
  double tau = 0;
  double epsilon = 0;

  bool operator==(const ProblemFamily&) const = default;
};

ProblemFamily lower_bound_family(std::span<const double> d, double tau,
                                 double epsilon);

ThresholdProblem problem_from_json_text(const std::string& text);
std::string problem_to_json_text(const ThresholdProblem& problem);

}  // namespace tbp

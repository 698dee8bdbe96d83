#pragma once

#include <memory>

#include "rng.hpp"

namespace tbp {

enum class ArmKind { bernoulli, gaussian, level_set };

/// One reward distribution with a known true mean. Immutable and cheap to
/// copy, so problems can be shared freely across threads.
class ArmModel {
 public:
  static ArmModel bernoulli(double p);
  static ArmModel gaussian(double mean, double variance);

  ArmKind kind() const { return kind_; }
  double true_mean() const { return true_mean_; }

  /// Sub-Gaussian scale: 1/2 for {0,1}-valued arms, sqrt(variance) for
  /// Gaussian arms.
  double subgaussian_r() const { return r_; }

  /// One draw. Gaussian draws are mean + sigma * z, so two Gaussian arms fed
  /// the same stream see the same underlying noise realization.
  double sample(Rng& rng) const;

  // bernoulli only
  double p() const;
  // gaussian only
  double mean() const;
  double variance() const;
  // level_set only
  const ArmModel& base() const;
  double level() const;

  bool operator==(const ArmModel& other) const;

  friend ArmModel transform_level_set(const ArmModel& base, double level);

 private:
  ArmModel() = default;

  ArmKind kind_ = ArmKind::bernoulli;
  double true_mean_ = 0;
  double r_ = 0.5;
  double p_ = 0;                          // bernoulli
  double mean_ = 0, variance_ = 0, sigma_ = 0;  // gaussian
  std::shared_ptr<const ArmModel> base_;  // level_set
  double level_ = 0;
};

/// Indicator-of-exceedance transform: draws become 1{base draw > level}, a
/// Bernoulli arm whose mean is the base's upper tail mass at `level`. The
/// base must be bernoulli or gaussian.
ArmModel transform_level_set(const ArmModel& base, double level);

/// P(X > level) for X ~ N(mean, variance), via erfc.
double gaussian_upper_tail(double mean, double variance, double level);

}  // namespace tbp

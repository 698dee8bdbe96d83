#include "distributions.hpp"

#include <cmath>
#include <stdexcept>

namespace tbp {

double gaussian_upper_tail(double mean, double variance, double level) {
  return 0.5 * std::erfc((level - mean) / std::sqrt(2.0 * variance));
}

ArmModel ArmModel::bernoulli(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("bernoulli p must be in [0,1]");
  }
  ArmModel a;
  a.kind_ = ArmKind::bernoulli;
  a.p_ = p;
  a.true_mean_ = p;
  a.r_ = 0.5;
  return a;
}

ArmModel ArmModel::gaussian(double mean, double variance) {
  if (!std::isfinite(mean)) {
    throw std::invalid_argument("gaussian mean must be finite");
  }
  if (!(variance > 0.0) || !std::isfinite(variance)) {
    throw std::invalid_argument("gaussian variance must be positive");
  }
  ArmModel a;
  a.kind_ = ArmKind::gaussian;
  a.mean_ = mean;
  a.variance_ = variance;
  a.sigma_ = std::sqrt(variance);
  a.true_mean_ = mean;
  a.r_ = a.sigma_;
  return a;
}

ArmModel transform_level_set(const ArmModel& base, double level) {
  if (base.kind_ == ArmKind::level_set) {
    throw std::invalid_argument("level_set base must be bernoulli or gaussian");
  }
  if (!std::isfinite(level)) {
    throw std::invalid_argument("level_set level must be finite");
  }
  ArmModel a;
  a.kind_ = ArmKind::level_set;
  a.base_ = std::make_shared<const ArmModel>(base);
  a.level_ = level;
  a.r_ = 0.5;
  switch (base.kind_) {
    case ArmKind::bernoulli:
      // Support {0,1}: tail mass is 1, p, or 0 depending on the cut.
      a.true_mean_ = level < 0.0 ? 1.0 : (level < 1.0 ? base.p_ : 0.0);
      break;
    case ArmKind::gaussian:
      a.true_mean_ = gaussian_upper_tail(base.mean_, base.variance_, level);
      break;
    default:
      break;
  }
  return a;
}

double ArmModel::sample(Rng& rng) const {
  switch (kind_) {
    case ArmKind::bernoulli:
      return rng.next_double() < p_ ? 1.0 : 0.0;
    case ArmKind::gaussian:
      return mean_ + sigma_ * rng.next_normal();
    case ArmKind::level_set:
      return base_->sample(rng) > level_ ? 1.0 : 0.0;
  }
  return 0.0;  // unreachable
}

double ArmModel::p() const {
  if (kind_ != ArmKind::bernoulli) {
    throw std::logic_error("p() on a non-bernoulli arm");
  }
  return p_;
}

double ArmModel::mean() const {
  if (kind_ != ArmKind::gaussian) {
    throw std::logic_error("mean() on a non-gaussian arm");
  }
  return mean_;
}

double ArmModel::variance() const {
  if (kind_ != ArmKind::gaussian) {
    throw std::logic_error("variance() on a non-gaussian arm");
  }
  return variance_;
}

const ArmModel& ArmModel::base() const {
  if (kind_ != ArmKind::level_set) {
    throw std::logic_error("base() on a non-level_set arm");
  }
  return *base_;
}

double ArmModel::level() const {
  if (kind_ != ArmKind::level_set) {
    throw std::logic_error("level() on a non-level_set arm");
  }
  return level_;
}

bool ArmModel::operator==(const ArmModel& other) const {
  if (kind_ != other.kind_) return false;
  switch (kind_) {
    case ArmKind::bernoulli:
      return p_ == other.p_;
    case ArmKind::gaussian:
      return mean_ == other.mean_ && variance_ == other.variance_;
    case ArmKind::level_set:
      return level_ == other.level_ && *base_ == *other.base_;
  }
  return false;
}

}  // namespace tbp

#include "grenander/step_density.hpp"

#include <algorithm>
#include <cmath>

#include "grenander/errors.hpp"

namespace grenander {

StepDensity::StepDensity(std::vector<double> breakpoints,
                         std::vector<double> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
  if (breakpoints_.size() != values_.size() + 1 || values_.empty()) {
    throw InternalError("StepDensity: need m+1 breakpoints for m pieces");
  }
  if (breakpoints_.front() != 0.0) {
    throw InternalError("StepDensity: breakpoints must start at 0");
  }
  for (std::size_t j = 0; j + 1 < breakpoints_.size(); ++j) {
    if (!(breakpoints_[j] < breakpoints_[j + 1])) {
      throw InternalError("StepDensity: breakpoints must strictly increase");
    }
  }
  for (std::size_t j = 0; j < values_.size(); ++j) {
    if (!(values_[j] > 0.0) || !std::isfinite(values_[j])) {
      throw InternalError("StepDensity: piece values must be positive");
    }
    if (j > 0 && values_[j] > values_[j - 1]) {
      throw InternalError("StepDensity: piece values must be non-increasing");
    }
  }
  if (std::fabs(integral() - 1.0) > 1e-12) {
    throw InternalError("StepDensity: piece areas must sum to 1");
  }
}

double StepDensity::operator()(double x) const {
  if (x < 0.0) return 0.0;
  if (x == 0.0) return values_.front();
  if (x > breakpoints_.back()) return 0.0;
  // first breakpoint >= x identifies the piece (t_{j-1}, t_j]
  auto it = std::lower_bound(breakpoints_.begin() + 1, breakpoints_.end(), x);
  return values_[static_cast<std::size_t>(it - breakpoints_.begin()) - 1];
}

double StepDensity::integral() const {
  double total = 0.0;
  for (std::size_t j = 0; j < values_.size(); ++j) {
    total += values_[j] * (breakpoints_[j + 1] - breakpoints_[j]);
  }
  return total;
}

double StepDensity::cdf(double x) const {
  if (x <= 0.0) return 0.0;
  double acc = 0.0;
  for (std::size_t j = 0; j < values_.size(); ++j) {
    if (x >= breakpoints_[j + 1]) {
      acc += values_[j] * (breakpoints_[j + 1] - breakpoints_[j]);
    } else {
      acc += values_[j] * (x - breakpoints_[j]);
      return acc;
    }
  }
  return acc;
}

}  // namespace grenander

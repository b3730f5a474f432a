#pragma once

#include <cstddef>
#include <vector>

namespace grenander {

// Left-continuous non-increasing step density: value values[j] on
// (breakpoints[j], breakpoints[j+1]], 0 beyond the last breakpoint, and the
// value at 0 equals the first piece. breakpoints[0] == 0, abscissae strictly
// increase, values are positive and non-increasing, and the piece areas sum
// to 1 within 1e-12.
class StepDensity {
 public:
  StepDensity(std::vector<double> breakpoints, std::vector<double> values);

  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& values() const { return values_; }
  std::size_t piece_count() const { return values_.size(); }
  double support_end() const { return breakpoints_.back(); }

  // Left-continuous evaluation; 0 for x beyond the support, first piece at 0.
  double operator()(double x) const;

  // Exact sum of piece areas.
  double integral() const;

  // \int_0^x p, the distribution function of the step density.
  double cdf(double x) const;

 private:
  std::vector<double> breakpoints_;
  std::vector<double> values_;
};

inline double eval_density(const StepDensity& p, double x) { return p(x); }

}  // namespace grenander

#include "grenander/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "grenander/errors.hpp"

namespace grenander {

StepDensity grenander_fit(const ConcaveMajorant& m) {
  const auto& v = m.vertices();
  std::vector<double> breakpoints;
  std::vector<double> values;
  breakpoints.reserve(v.size());
  values.reserve(v.size() - 1);
  breakpoints.push_back(v.front().x);
  for (std::size_t k = 0; k + 1 < v.size(); ++k) {
    values.push_back((v[k + 1].y - v[k].y) / (v[k + 1].x - v[k].x));
    breakpoints.push_back(v[k + 1].x);
  }
  return StepDensity(std::move(breakpoints), std::move(values));
}

StepDensity grenander_fit(const Sample& s) {
  return grenander_fit(least_concave_majorant(empirical_cdf(s)));
}

double grenander_oracle(const Sample& s, double x) {
  if (!(x > 0.0) || x > s.max()) {
    throw InputError("grenander_oracle: x must lie in (0, max(sample)]");
  }
  const EmpiricalCdf F = empirical_cdf(s);
  const auto& jumps = F.jump_points();
  const auto& heights = F.heights();

  double best_min = std::numeric_limits<double>::infinity();
  // grid of left endpoints: the zero anchor plus every jump point < x;
  // a jump located exactly at 0 is pooled into the anchor, mirroring the hull
  for (std::size_t a = 0; a <= jumps.size(); ++a) {
    const double s0 = (a == 0) ? 0.0 : jumps[a - 1];
    const double h0 = (a == 0) ? 0.0 : heights[a - 1];
    if (a > 0 && s0 == 0.0) continue;
    if (!(s0 < x)) break;
    double best_max = -std::numeric_limits<double>::infinity();
    for (std::size_t b = 0; b < jumps.size(); ++b) {
      if (jumps[b] < x) continue;
      best_max = std::max(best_max, (heights[b] - h0) / (jumps[b] - s0));
    }
    best_min = std::min(best_min, best_max);
  }
  return best_min;
}

double log_likelihood(const StepDensity& p, const Sample& s) {
  double acc = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double pi = p(s[i]);
    if (!(pi > 0.0)) {
      throw InputError("log_likelihood: density not positive at observation " +
                       std::to_string(i) + " (x = " + std::to_string(s[i]) +
                       ")");
    }
    acc += std::log(pi);
  }
  return acc / static_cast<double>(s.size());
}

BoundsDiagnostics bounds_diagnostics(const StepDensity& fit, const Sample& s) {
  (void)s;  // the fit already carries X_(n) as its last breakpoint
  return BoundsDiagnostics{fit.values().back(), fit.values().front()};
}

}  // namespace grenander

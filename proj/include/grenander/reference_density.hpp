#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "grenander/sample.hpp"

namespace grenander {

// Closed-form non-increasing reference density p_0 on a bounded support
// [0, alpha1], bounded away from zero there. Four families:
//
//   uniform(alpha1)              1/alpha1 on [0, alpha1]
//   linear(a, b, alpha1)         a - b*x on [0, alpha1], b >= 0
//   stepJump(edges, heights)     non-increasing step function
//   truncExp(rate, alpha1)       c*exp(-rate*x), normalized on [0, alpha1]
//
// Families carry the metadata the limit theorems condition on: the bounds
// zeta <= p_0 <= K, the discontinuity list (t, size of the drop), and when
// finite the essential sup of dLebesgue/dDp_0 (the strict curvature flag).
class ReferenceDensity {
 public:
  enum class Family { Uniform, Linear, StepJump, TruncExp };

  struct JumpPoint {
    double t;
    double delta;  // left limit minus right limit, > 0
  };

  static ReferenceDensity uniform(double alpha1);
  static ReferenceDensity linear(double a, double b, double alpha1);
  static ReferenceDensity step_jump(std::vector<double> edges,
                                    std::vector<double> heights);
  static ReferenceDensity trunc_exp(double rate, double alpha1);

  Family family() const { return family_; }
  double support_end() const { return alpha1_; }
  double lower_bound() const { return zeta_; }  // inf of pdf on the support
  double upper_bound() const { return k_; }     // sup of pdf

  double pdf(double x) const;
  double cdf(double x) const;
  // Unique x with cdf(x) = u; the cdf is strictly increasing on the support
  // since pdf >= zeta > 0. Requires u in (0,1).
  double quantile(double u) const;

  // n inverse-CDF draws from the counter-based generator keyed by `seed`,
  // returned sorted. Identical (seed, n, density) give identical output.
  Sample sample_iid(int n, std::uint64_t seed) const;

  const std::vector<JumpPoint>& jump_points() const { return jumps_; }
  std::optional<JumpPoint> jump_at(double t) const;

  // ||lambda/Dp_0||_inf when Lebesgue measure on the support is absolutely
  // continuous w.r.t. Dp_0 (linear with b > 0, truncExp); empty otherwise.
  std::optional<double> lambda_over_dp0() const { return lambda_over_dp0_; }
  bool strict_curvature() const { return lambda_over_dp0_.has_value(); }

  // Cell edges of the closed-form pdf, for breakpoint-aligned quadrature.
  const std::vector<double>& breakpoints() const { return breakpoints_; }

  std::string describe() const;

  // Family parameters, exposed for serialization.
  double param_a() const { return a_; }
  double param_b() const { return b_; }
  double param_rate() const { return rate_; }
  const std::vector<double>& step_edges() const { return step_edges_; }
  const std::vector<double>& step_heights() const { return step_heights_; }

 private:
  ReferenceDensity() = default;

  Family family_ = Family::Uniform;
  double alpha1_ = 1.0;
  double zeta_ = 1.0;
  double k_ = 1.0;
  double a_ = 0.0;
  double b_ = 0.0;
  double rate_ = 0.0;
  double exp_scale_ = 0.0;  // truncExp normalizer c
  std::vector<double> step_edges_;
  std::vector<double> step_heights_;
  std::vector<double> step_cum_;  // cdf at step edges
  std::vector<JumpPoint> jumps_;
  std::optional<double> lambda_over_dp0_;
  std::vector<double> breakpoints_;
};

}  // namespace grenander

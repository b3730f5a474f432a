#pragma once

#include <span>
#include <string>

#include "grenander/fit.hpp"
#include "grenander/quadrature.hpp"
#include "grenander/reference_density.hpp"
#include "grenander/test_function.hpp"

namespace grenander {

// P_0 f by breakpoint-aligned quadrature.
double mean_under(const ReferenceDensity& d, const EvaluableFunction& f,
                  const QuadratureSpec& spec = likelihood_quadrature());

// pi_0(f) = (f - P_0 f) * p_0, the projection of f onto the tangent space of
// zero-mean perturbations; integrates to 0 over the support.
EvaluableFunction pi0_projection(
    const TestFunction& f, const ReferenceDensity& d,
    const QuadratureSpec& spec = likelihood_quadrature());

// Largest |eta| for which p_0 + eta*pi_0(f) provably stays a non-increasing
// positive density:
//   min( zeta / (2K||f||), [max(2,K) (||f|| + ||Df/Dp_0||)]^{-1} ).
// Returns +inf for the zero direction (no constraint binds). Throws
// InputError when ||Df/Dp_0|| is not resolvable for the pair.
double perturbation_bound(const TestFunction& f, const ReferenceDensity& d);

struct Perturbation {
  double eta;
  EvaluableFunction direction;  // pi_0(f)
  ReferenceDensity base;
};

struct PerturbationReport {
  bool valid = true;
  std::string violation;   // empty when valid
  double at_x = 0.0;       // first violating grid point
};

// Grid check (1e4 uniform points on the support): positivity, monotonicity
// within 1e-10 slack, and unit integral within 1e-10.
PerturbationReport check_perturbation_valid(const Perturbation& pert);

// alpha-th Frechet derivative of the log-likelihood at `base`, evaluated in
// the given directions:
//   (-1)^{alpha-1} (alpha-1)! * P(base^{-alpha} f_1 ... f_alpha)
// with P the empirical measure (Sample overload, exact mean) or P_0
// (ReferenceDensity overload, quadrature). Requires base > 0 at every
// observation, resp. on the support.
double dlog_likelihood(int order, const EvaluableFunction& base,
                       std::span<const EvaluableFunction> directions,
                       const Sample& s);
double dlog_likelihood(int order, const EvaluableFunction& base,
                       std::span<const EvaluableFunction> directions,
                       const ReferenceDensity& d,
                       const QuadratureSpec& spec = likelihood_quadrature());

// D ell_n(\hat p_n)[\hat p_n - p_0] = P_n((\hat p_n - p_0)/\hat p_n), the
// signed score at the maximizer in the direction of the truth.
double score_self(const StepDensity& fit, const Sample& s,
                  const ReferenceDensity& d);
double score_self(const Sample& s, const ReferenceDensity& d);

// (\hat P_n - P_n)(f). Exact for indicator f (reduces to
// \hat F_n(t) - F_n(t)); breakpoint-aligned quadrature otherwise.
double plugin_minus_empirical(
    const StepDensity& fit, const Sample& s, const TestFunction& f,
    const QuadratureSpec& spec = likelihood_quadrature());

// sqrt(n) * (\int f d\hat P_n - \int f dP_0).
double clt_statistic(const StepDensity& fit, const ReferenceDensity& d,
                     const TestFunction& f, std::size_t n,
                     const QuadratureSpec& spec = likelihood_quadrature());

// P_0 (f - P_0 f)^2; exact F_0(t)(1 - F_0(t)) for indicators.
double limit_variance(const TestFunction& f, const ReferenceDensity& d,
                      const QuadratureSpec& spec = likelihood_quadrature());

// P_0(fg) - P_0 f P_0 g, the limiting Brownian-bridge covariance.
double gaussian_covariance(const TestFunction& f, const TestFunction& g,
                           const ReferenceDensity& d,
                           const QuadratureSpec& spec = likelihood_quadrature());

}  // namespace grenander

#pragma once

#include "grenander/empirical_cdf.hpp"
#include "grenander/majorant.hpp"
#include "grenander/sample.hpp"
#include "grenander/step_density.hpp"

namespace grenander {

// The Grenander estimator: left derivative of the least concave majorant of
// the empirical CDF. Breakpoints are the hull vertex abscissae.
StepDensity grenander_fit(const Sample& s);
StepDensity grenander_fit(const ConcaveMajorant& m);

// Independent O(n^2) min-max characterization of the estimator,
//   min over grid points s' < x of max over jump points t >= x of
//   (F_n(t) - F_n(s')) / (t - s'),
// with s' ranging over {0} and the ECDF jump points. Used as a brute-force
// oracle against grenander_fit; requires 0 < x <= max(s).
double grenander_oracle(const Sample& s, double x);

// (1/n) sum log p(X_i). Throws InputError naming the first observation where
// p is not strictly positive.
double log_likelihood(const StepDensity& p, const Sample& s);

struct BoundsDiagnostics {
  double min_on_data;  // \hat p_n(X_(n)), the infimum over [0, X_(n)]
  double max_value;    // \hat p_n(0) = sup norm
};

BoundsDiagnostics bounds_diagnostics(const StepDensity& fit, const Sample& s);

}  // namespace grenander

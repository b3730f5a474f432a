#pragma once

#include <cstddef>
#include <vector>

namespace grenander {

double normal_cdf(double x);

// Inverse standard normal CDF (Acklam's rational approximation polished with
// one Halley step); accurate to close to machine precision on (0,1).
double normal_quantile(double p);

// Kolmogorov-Smirnov distance between the empirical CDF of `values` and the
// mean-zero normal CDF with standard deviation `sigma`. sigma == 0 encodes
// the degenerate delta_0 limit and requires every value to be zero.
double ks_against_normal(const std::vector<double>& values, double sigma);

struct SlopeFit {
  double slope;
  double stderr_;  // least-squares standard error of the slope
};

// Least-squares line through (x, y); needs >= 3 points.
SlopeFit least_squares_slope(const std::vector<double>& x,
                             const std::vector<double>& y);

// Deterministic order statistics (linear interpolation between sorted
// values, R type-7).
double quantile_of(std::vector<double> values, double p);

double mean_of(const std::vector<double>& values);
double variance_of(const std::vector<double>& values);  // n-1 denominator

}  // namespace grenander

#include "grenander/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "grenander/errors.hpp"

namespace grenander {

double normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double normal_quantile(double p) {
  if (!(p > 0.0) || !(p < 1.0)) {
    throw InputError("normal_quantile: p must lie in (0,1)");
  }
  // Acklam's coefficients
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;
  double x;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) *
        q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  // one Halley step against the exact CDF
  const double e = normal_cdf(x) - p;
  const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(x * x / 2.0);
  x = x - u / (1.0 + x * u / 2.0);
  return x;
}

double ks_against_normal(const std::vector<double>& values, double sigma) {
  if (values.empty()) {
    throw InputError("ks_against_normal: empty value list");
  }
  if (sigma < 0.0) {
    throw InputError("ks_against_normal: sigma must be >= 0");
  }
  if (sigma == 0.0) {
    for (double v : values) {
      if (v != 0.0) {
        throw InputError(
            "ks_against_normal: sigma = 0 (delta_0 limit) requires all "
            "values to be zero");
      }
    }
    return 0.0;
  }
  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double dist = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double phi = normal_cdf(sorted[i] / sigma);
    const double hi = (static_cast<double>(i) + 1.0) / n - phi;
    const double lo = phi - static_cast<double>(i) / n;
    dist = std::max({dist, hi, lo});
  }
  return dist;
}

SlopeFit least_squares_slope(const std::vector<double>& x,
                             const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 3) {
    throw InputError("least_squares_slope: need >= 3 points");
  }
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) {
    throw InputError("least_squares_slope: degenerate abscissae");
  }
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double rss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - intercept - slope * x[i];
    rss += r * r;
  }
  const double sigma2 = rss / (n - 2.0);
  return SlopeFit{slope, std::sqrt(sigma2 / sxx)};
}

double quantile_of(std::vector<double> values, double p) {
  if (values.empty()) throw InputError("quantile_of: empty value list");
  std::sort(values.begin(), values.end());
  if (values.size() == 1) return values[0];
  const double h = p * (static_cast<double>(values.size()) - 1.0);
  const auto j = static_cast<std::size_t>(std::floor(h));
  if (j + 1 >= values.size()) return values.back();
  const double g = h - std::floor(h);
  return values[j] + g * (values[j + 1] - values[j]);
}

double mean_of(const std::vector<double>& values) {
  double acc = 0.0;
  for (double v : values) acc += v;
  return acc / static_cast<double>(values.size());
}

double variance_of(const std::vector<double>& values) {
  if (values.size() < 2) return 0.0;
  const double m = mean_of(values);
  double acc = 0.0;
  for (double v : values) acc += (v - m) * (v - m);
  return acc / (static_cast<double>(values.size()) - 1.0);
}

}  // namespace grenander

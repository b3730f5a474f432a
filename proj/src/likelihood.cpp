#include "grenander/likelihood.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "grenander/errors.hpp"

namespace grenander {

double mean_under(const ReferenceDensity& d, const EvaluableFunction& f,
                  const QuadratureSpec& spec) {
  const EvaluableFunction pdf = as_function(d);
  return integrate_aligned(
      d.support_end(), {&f, &pdf},
      [&](double x) { return f(x) * d.pdf(x); }, spec);
}

EvaluableFunction pi0_projection(const TestFunction& f,
                                 const ReferenceDensity& d,
                                 const QuadratureSpec& spec) {
  const double p0f = mean_under(d, f.fn(), spec);
  EvaluableFunction out;
  const auto eval = f.fn().eval;
  out.eval = [eval, p0f, d](double x) { return (eval(x) - p0f) * d.pdf(x); };
  out.breakpoints = f.fn().breakpoints;
  out.breakpoints.insert(out.breakpoints.end(), d.breakpoints().begin(),
                         d.breakpoints().end());
  std::sort(out.breakpoints.begin(), out.breakpoints.end());
  out.breakpoints.erase(
      std::unique(out.breakpoints.begin(), out.breakpoints.end()),
      out.breakpoints.end());
  out.rough_points = f.fn().rough_points;
  return out;
}

double perturbation_bound(const TestFunction& f, const ReferenceDensity& d) {
  const double sup = f.sup_norm(d.support_end());
  if (sup == 0.0) return std::numeric_limits<double>::infinity();
  const auto ratio = f.df_over_dp0(d);
  if (!ratio) {
    throw InputError(
        "perturbation_bound: ||Df/Dp_0|| is not resolvable for " +
        f.describe() + " against " + d.describe());
  }
  const double zeta = d.lower_bound();
  const double big_k = d.upper_bound();
  const double positivity = zeta / (2.0 * big_k * sup);
  const double monotonicity =
      1.0 / (std::max(2.0, big_k) * (sup + *ratio));
  return std::min(positivity, monotonicity);
}

PerturbationReport check_perturbation_valid(const Perturbation& pert) {
  constexpr int kGridPoints = 10000;
  constexpr double kMonotoneSlack = 1e-10;
  constexpr double kMassTol = 1e-10;
  const double end = pert.base.support_end();

  PerturbationReport report;
  auto value = [&](double x) {
    return pert.base.pdf(x) + pert.eta * pert.direction(x);
  };
  double prev = value(0.0);
  if (!(prev > 0.0)) {
    report.valid = false;
    report.violation = "positivity";
    report.at_x = 0.0;
    return report;
  }
  for (int i = 1; i < kGridPoints; ++i) {
    const double x =
        end * static_cast<double>(i) / static_cast<double>(kGridPoints - 1);
    const double v = value(x);
    if (!(v > 0.0)) {
      report.valid = false;
      report.violation = "positivity";
      report.at_x = x;
      return report;
    }
    if (v > prev + kMonotoneSlack) {
      report.valid = false;
      report.violation = "monotonicity";
      report.at_x = x;
      return report;
    }
    prev = v;
  }
  const EvaluableFunction pdf = as_function(pert.base);
  const double mass = integrate_aligned(
      end, {&pert.direction, &pdf}, value, likelihood_quadrature());
  if (std::fabs(mass - 1.0) > kMassTol) {
    report.valid = false;
    report.violation = "unit integral";
    report.at_x = end;
    return report;
  }
  return report;
}

namespace {

void check_order(int order, std::size_t dirs) {
  if (order < 1 || order > 3) {
    throw InputError("dlog_likelihood: order must be 1, 2 or 3");
  }
  if (dirs != static_cast<std::size_t>(order)) {
    throw InputError("dlog_likelihood: need one direction per order");
  }
}

double sign_factor(int order) {
  // (-1)^{alpha-1} (alpha-1)!
  const double fact = (order == 3) ? 2.0 : 1.0;
  return (order % 2 == 1) ? fact : -fact;
}

}  // namespace

double dlog_likelihood(int order, const EvaluableFunction& base,
                       std::span<const EvaluableFunction> directions,
                       const Sample& s) {
  check_order(order, directions.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double b = base(s[i]);
    if (!(b > 0.0)) {
      throw InputError(
          "dlog_likelihood: base not positive at observation " +
          std::to_string(i) + " (x = " + std::to_string(s[i]) + ")");
    }
    double term = std::pow(b, -order);
    for (const auto& dir : directions) term *= dir(s[i]);
    acc += term;
  }
  return sign_factor(order) * acc / static_cast<double>(s.size());
}

double dlog_likelihood(int order, const EvaluableFunction& base,
                       std::span<const EvaluableFunction> directions,
                       const ReferenceDensity& d, const QuadratureSpec& spec) {
  check_order(order, directions.size());
  std::vector<const EvaluableFunction*> fs = {&base};
  for (const auto& dir : directions) fs.push_back(&dir);
  const EvaluableFunction pdf = as_function(d);
  fs.push_back(&pdf);
  const double integral = integrate_aligned(
      d.support_end(), fs,
      [&](double x) {
        const double b = base(x);
        if (!(b > 0.0)) {
          throw InputError(
              "dlog_likelihood: base not positive on the support (x = " +
              std::to_string(x) + ")");
        }
        double term = std::pow(b, -order) * d.pdf(x);
        for (const auto& dir : directions) term *= dir(x);
        return term;
      },
      spec);
  return sign_factor(order) * integral;
}

double score_self(const StepDensity& fit, const Sample& s,
                  const ReferenceDensity& d) {
  double acc = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double ph = fit(s[i]);
    if (!(ph > 0.0)) {
      throw InputError("score_self: fit not positive at observation " +
                       std::to_string(i));
    }
    acc += (ph - d.pdf(s[i])) / ph;
  }
  return acc / static_cast<double>(s.size());
}

double score_self(const Sample& s, const ReferenceDensity& d) {
  return score_self(grenander_fit(s), s, d);
}

double plugin_minus_empirical(const StepDensity& fit, const Sample& s,
                              const TestFunction& f,
                              const QuadratureSpec& spec) {
  double empirical = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) empirical += f(s[i]);
  empirical /= static_cast<double>(s.size());

  double fitted;
  if (f.kind() == TestFunction::Kind::Indicator) {
    fitted = fit.cdf(*f.indicator_t());  // \hat F_n(t), exact
  } else {
    const EvaluableFunction density = as_function(fit);
    fitted = integrate_aligned(
        fit.support_end(), {&f.fn(), &density},
        [&](double x) { return f(x) * fit(x); }, spec);
  }
  return fitted - empirical;
}

double clt_statistic(const StepDensity& fit, const ReferenceDensity& d,
                     const TestFunction& f, std::size_t n,
                     const QuadratureSpec& spec) {
  double fitted;
  double reference;
  if (f.kind() == TestFunction::Kind::Indicator) {
    const double t = *f.indicator_t();
    fitted = fit.cdf(t);
    reference = d.cdf(t);
  } else {
    const EvaluableFunction density = as_function(fit);
    fitted = integrate_aligned(
        fit.support_end(), {&f.fn(), &density},
        [&](double x) { return f(x) * fit(x); }, spec);
    reference = mean_under(d, f.fn(), spec);
  }
  return std::sqrt(static_cast<double>(n)) * (fitted - reference);
}

double limit_variance(const TestFunction& f, const ReferenceDensity& d,
                      const QuadratureSpec& spec) {
  if (f.kind() == TestFunction::Kind::Indicator) {
    const double f0 = d.cdf(*f.indicator_t());
    return f0 * (1.0 - f0);
  }
  const double p0f = mean_under(d, f.fn(), spec);
  const EvaluableFunction pdf = as_function(d);
  return integrate_aligned(
      d.support_end(), {&f.fn(), &pdf},
      [&](double x) {
        const double c = f(x) - p0f;
        return c * c * d.pdf(x);
      },
      spec);
}

double gaussian_covariance(const TestFunction& f, const TestFunction& g,
                           const ReferenceDensity& d,
                           const QuadratureSpec& spec) {
  const double p0f = mean_under(d, f.fn(), spec);
  const double p0g = mean_under(d, g.fn(), spec);
  const EvaluableFunction pdf = as_function(d);
  const double p0fg = integrate_aligned(
      d.support_end(), {&f.fn(), &g.fn(), &pdf},
      [&](double x) { return f(x) * g(x) * d.pdf(x); }, spec);
  return p0fg - p0f * p0g;
}

}  // namespace grenander

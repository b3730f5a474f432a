#include "grenander/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "grenander/errors.hpp"

namespace grenander {

namespace {

// Merged cell edges of two step densities over the union of their supports.
std::vector<double> merged_edges(const StepDensity& p, const StepDensity& q) {
  std::vector<double> edges;
  edges.reserve(p.breakpoints().size() + q.breakpoints().size());
  edges.insert(edges.end(), p.breakpoints().begin(), p.breakpoints().end());
  edges.insert(edges.end(), q.breakpoints().begin(), q.breakpoints().end());
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

template <typename CellFn>
double sum_over_cells(const StepDensity& p, const StepDensity& q,
                      CellFn&& cell) {
  const auto edges = merged_edges(p, q);
  double acc = 0.0;
  for (std::size_t c = 0; c + 1 < edges.size(); ++c) {
    const double mid = 0.5 * (edges[c] + edges[c + 1]);
    acc += cell(p(mid), q(mid)) * (edges[c + 1] - edges[c]);
  }
  return acc;
}

double union_end(const StepDensity& p, const ReferenceDensity& q) {
  return std::max(p.support_end(), q.support_end());
}

}  // namespace

double hellinger(const StepDensity& p, const StepDensity& q) {
  const double h2 = 0.5 * sum_over_cells(p, q, [](double a, double b) {
    const double d = std::sqrt(a) - std::sqrt(b);
    return d * d;
  });
  return std::sqrt(std::clamp(h2, 0.0, 1.0));
}

double hellinger(const EvaluableFunction& p, const EvaluableFunction& q,
                 double support_end, const QuadratureSpec& spec) {
  const double h2 =
      0.5 * integrate_aligned(support_end, {&p, &q},
                              [&](double x) {
                                const double d =
                                    std::sqrt(std::max(0.0, p(x))) -
                                    std::sqrt(std::max(0.0, q(x)));
                                return d * d;
                              },
                              spec);
  return std::sqrt(std::clamp(h2, 0.0, 1.0));
}

double hellinger(const StepDensity& p, const ReferenceDensity& q,
                 const QuadratureSpec& spec) {
  return hellinger(as_function(p), as_function(q), union_end(p, q), spec);
}

double l2_distance(const StepDensity& p, const StepDensity& q) {
  return std::sqrt(sum_over_cells(p, q, [](double a, double b) {
    return (a - b) * (a - b);
  }));
}

double l2_distance(const EvaluableFunction& p, const EvaluableFunction& q,
                   double support_end, const QuadratureSpec& spec) {
  const double sq = integrate_aligned(support_end, {&p, &q},
                                      [&](double x) {
                                        const double d = p(x) - q(x);
                                        return d * d;
                                      },
                                      spec);
  return std::sqrt(std::max(0.0, sq));
}

double l2_distance(const StepDensity& p, const ReferenceDensity& q,
                   const QuadratureSpec& spec) {
  return l2_distance(as_function(p), as_function(q), union_end(p, q), spec);
}

double l1_distance(const StepDensity& p, const StepDensity& q) {
  return sum_over_cells(p, q,
                        [](double a, double b) { return std::fabs(a - b); });
}

double l1_distance(const EvaluableFunction& p, const EvaluableFunction& q,
                   double support_end, const QuadratureSpec& spec) {
  std::vector<double> rough;
  rough.insert(rough.end(), p.rough_points.begin(), p.rough_points.end());
  rough.insert(rough.end(), q.rough_points.begin(), q.rough_points.end());
  std::sort(rough.begin(), rough.end());
  rough.erase(std::unique(rough.begin(), rough.end()), rough.end());
  const auto part = build_partition(0.0, support_end,
                                    {&p.breakpoints, &q.breakpoints}, rough,
                                    spec);
  return integrate_abs_partition(part,
                                 [&](double x) { return p(x) - q(x); });
}

double l1_distance(const StepDensity& p, const ReferenceDensity& q,
                   const QuadratureSpec& spec) {
  return l1_distance(as_function(p), as_function(q), union_end(p, q), spec);
}

double sup_diff_cdf(const ConcaveMajorant& m, const EmpiricalCdf& f) {
  constexpr double kConsistencyTol = 1e-9;
  const auto& jumps = f.jump_points();
  const auto& heights = f.heights();
  double sup = 0.0;
  double prev_height = 0.0;
  for (std::size_t k = 0; k < jumps.size(); ++k) {
    const double mx = m(jumps[k]);
    const double at_height = mx - heights[k];
    const double at_prev = mx - prev_height;
    if (jumps[k] > 0.0 && at_height < -kConsistencyTol) {
      throw InternalError(
          "sup_diff_cdf: majorant fails to dominate the ECDF at x = " +
          std::to_string(jumps[k]));
    }
    sup = std::max({sup, at_height, at_prev});
    prev_height = heights[k];
  }
  return sup;
}

}  // namespace grenander

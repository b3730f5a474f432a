#pragma once

#include <functional>
#include <vector>

#include "grenander/reference_density.hpp"
#include "grenander/step_density.hpp"

namespace grenander {

// A real function on [0, inf) that quadrature can align to: an evaluator
// plus the points where smoothness may fail. `rough_points` marks interior
// points (e.g. a Hoelder kink) that get extra dyadic refinement.
struct EvaluableFunction {
  std::function<double(double)> eval;
  std::vector<double> breakpoints;
  std::vector<double> rough_points;

  double operator()(double x) const { return eval(x); }
};

EvaluableFunction as_function(const StepDensity& p);
EvaluableFunction as_function(const ReferenceDensity& d);
EvaluableFunction constant_function(double c);

// Breakpoint-aligned composite quadrature. Every supplied breakpoint becomes
// a cell edge, each base cell is split into `subdivisions` uniform subcells,
// and cells adjacent to a rough point are refined dyadically `grade_levels`
// times toward it. Integration is 8-node Gauss-Legendre per subcell, exact
// for polynomial integrands up to degree 15.
struct QuadratureSpec {
  int subdivisions = 16;
  double abs_tol = 1e-9;
  int grade_levels = 12;
};

// Spec used by the likelihood functionals (non-polynomial integrands).
inline QuadratureSpec likelihood_quadrature() { return {64, 1e-9, 14}; }

// Partition of [a, b]: union of the supplied breakpoint lists restricted to
// (a, b), plus a and b themselves, refined per `spec`.
std::vector<double> build_partition(
    double a, double b, const std::vector<const std::vector<double>*>& edges,
    const std::vector<double>& rough_points, const QuadratureSpec& spec);

// Integral over the partition cells.
double integrate_partition(const std::vector<double>& partition,
                           const std::function<double(double)>& f);

// Integral of |f| over the partition. Cells where the sampled sign flips are
// split at bisected roots of f, so kinked integrands like |p - q| lose no
// accuracy.
double integrate_abs_partition(const std::vector<double>& partition,
                               const std::function<double(double)>& f);

// Convenience: integrate f over [0, end] aligning to the given functions'
// breakpoints and rough points.
double integrate_aligned(double end,
                         const std::vector<const EvaluableFunction*>& fs,
                         const std::function<double(double)>& integrand,
                         const QuadratureSpec& spec);

}  // namespace grenander

#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "grenander/reference_density.hpp"
#include "grenander/step_density.hpp"

namespace grenander {

// Piecewise polynomial of degree <= 3 on consecutive cells
// [edges[k], edges[k+1]), zero outside [edges.front(), edges.back()].
// Coefficients are stored in the local coordinate u = x - edges[k], which
// keeps evaluation and root finding well conditioned. Cells may disagree at
// shared edges (step discontinuities are representable).
class PolyCells {
 public:
  using Coef = std::array<double, 4>;  // c0 + c1 u + c2 u^2 + c3 u^3

  PolyCells(std::vector<double> edges, std::vector<Coef> coef);

  static PolyCells from_step(const StepDensity& p);
  // Exact representation; uniform, linear and stepJump families only.
  static PolyCells from_reference(const ReferenceDensity& d);

  const std::vector<double>& edges() const { return edges_; }
  const std::vector<Coef>& coefficients() const { return coef_; }
  int degree() const;

  double operator()(double x) const;

  double integral() const;
  // Exact integral of |f|: each cell is split at the real roots of its
  // polynomial (closed-form quadratic/cubic solve) before integrating.
  double integral_abs() const;

  PolyCells operator-(const PolyCells& other) const;

  // Exact convolution of two piecewise-linear operands. Knots are all
  // pairwise edge sums; on each knot cell the result is a single cubic,
  // accumulated pair of pieces by pair of pieces.
  static PolyCells convolve(const PolyCells& a, const PolyCells& b);

 private:
  PolyCells() = default;
  std::vector<double> edges_;
  std::vector<Coef> coef_;
};

// Real roots of c0 + c1 x + c2 x^2 + c3 x^3 inside (lo, hi), ascending.
std::vector<double> polynomial_roots_in(const std::array<double, 4>& c,
                                        double lo, double hi);

// Continuous piecewise-linear function: values at knots, linear between,
// zero outside [knots.front(), knots.back()]. The exact shape of a
// convolution of two step densities.
struct PiecewiseLinearFn {
  std::vector<double> knots;
  std::vector<double> values;

  double operator()(double x) const;
  double integral() const;
  double support_end() const { return knots.back(); }
};

}  // namespace grenander

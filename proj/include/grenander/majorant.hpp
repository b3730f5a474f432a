#pragma once

#include <vector>

#include "grenander/empirical_cdf.hpp"

namespace grenander {

// Least concave majorant of an empirical CDF: a piecewise-linear concave
// function through a minimal vertex set. First vertex is (0,0), last is
// (X_(n), 1), abscissae strictly increase and segment slopes strictly
// decrease.
class ConcaveMajorant {
 public:
  struct Vertex {
    double x;
    double y;
  };

  const std::vector<Vertex>& vertices() const { return vertices_; }

  // Linear interpolation on the vertices; 0 at t <= 0 and 1 beyond the last
  // vertex (the fitted distribution function \hat F_n).
  double operator()(double t) const;

  double support_end() const { return vertices_.back().x; }

 private:
  friend ConcaveMajorant least_concave_majorant(const EmpiricalCdf& cdf);
  explicit ConcaveMajorant(std::vector<Vertex> v) : vertices_(std::move(v)) {}
  std::vector<Vertex> vertices_;
};

// Upper hull of {(0,0)} u {(jump point, height)} in one left-to-right
// monotone-chain pass. Points whose removal keeps the chain within the
// collinearity tolerance are pooled away, so the vertex set is minimal.
// A jump at abscissa 0 (sample values equal to zero) is pooled into the
// (0,0) anchor; the hull then dominates the ECDF in the left-limit sense at
// 0 and in the usual sense at every other jump point. Requires max(s) > 0.
ConcaveMajorant least_concave_majorant(const EmpiricalCdf& cdf);

// \hat F_n(t) — alias for ConcaveMajorant::operator() kept as a free
// function to mirror the rest of the evaluation API.
double eval_fitted_cdf(const ConcaveMajorant& m, double t);

}  // namespace grenander

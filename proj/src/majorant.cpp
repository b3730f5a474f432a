#include "grenander/majorant.hpp"

#include <algorithm>
#include <cmath>

#include "grenander/errors.hpp"

namespace grenander {

namespace {

double slope(const ConcaveMajorant::Vertex& a, const ConcaveMajorant::Vertex& b) {
  return (b.y - a.y) / (b.x - a.x);
}

// Middle point survives only if the chain turns strictly downward there.
// Collinear triples (slopes equal within an absolute tolerance scaled by the
// slope magnitudes) are pooled so the vertex set stays minimal.
bool keeps_middle(const ConcaveMajorant::Vertex& a,
                  const ConcaveMajorant::Vertex& b,
                  const ConcaveMajorant::Vertex& c) {
  const double s1 = slope(a, b);
  const double s2 = slope(b, c);
  const double tol = 1e-12 * std::max({1.0, std::fabs(s1), std::fabs(s2)});
  return s1 > s2 + tol;
}

}  // namespace

ConcaveMajorant least_concave_majorant(const EmpiricalCdf& cdf) {
  const auto& xs = cdf.jump_points();
  const auto& hs = cdf.heights();
  if (xs.back() <= 0.0) {
    throw InputError(
        "least_concave_majorant: sample maximum must be positive");
  }

  std::vector<ConcaveMajorant::Vertex> hull;
  hull.reserve(xs.size() + 1);
  hull.push_back({0.0, 0.0});
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (xs[k] == 0.0) continue;  // jump at 0 pooled into the anchor
    ConcaveMajorant::Vertex next{xs[k], hs[k]};
    while (hull.size() >= 2 &&
           !keeps_middle(hull[hull.size() - 2], hull.back(), next)) {
      hull.pop_back();
    }
    hull.push_back(next);
  }
  return ConcaveMajorant(std::move(hull));
}

double ConcaveMajorant::operator()(double t) const {
  if (t <= 0.0) return 0.0;
  if (t >= vertices_.back().x) return 1.0;
  // first vertex with x >= t
  auto it = std::lower_bound(
      vertices_.begin(), vertices_.end(), t,
      [](const Vertex& v, double value) { return v.x < value; });
  const Vertex& hi = *it;
  const Vertex& lo = *(it - 1);
  return lo.y + (hi.y - lo.y) * (t - lo.x) / (hi.x - lo.x);
}

double eval_fitted_cdf(const ConcaveMajorant& m, double t) { return m(t); }

}  // namespace grenander

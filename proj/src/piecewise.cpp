#include "grenander/piecewise.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "grenander/errors.hpp"

namespace grenander {

namespace {

double eval_local(const PolyCells::Coef& c, double u) {
  return ((c[3] * u + c[2]) * u + c[1]) * u + c[0];
}

// Antiderivative of the local polynomial at u (zero at u = 0).
double anti_local(const PolyCells::Coef& c, double u) {
  return (((c[3] / 4.0 * u + c[2] / 3.0) * u + c[1] / 2.0) * u + c[0]) * u;
}

void solve_quadratic(double a, double b, double c, std::vector<double>& out) {
  if (a == 0.0) {
    if (b != 0.0) out.push_back(-c / b);
    return;
  }
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) return;
  const double sq = std::sqrt(disc);
  // Citardauq form for the smaller-magnitude root to avoid cancellation.
  const double q = -0.5 * (b + std::copysign(sq, b));
  out.push_back(q / a);
  if (q != 0.0) out.push_back(c / q);
}

}  // namespace

std::vector<double> polynomial_roots_in(const std::array<double, 4>& c,
                                        double lo, double hi) {
  std::vector<double> roots;
  if (c[3] != 0.0) {
    // depressed cubic t^3 + pt + q, x = t - c2/(3 c3)
    const double a = c[2] / c[3];
    const double b = c[1] / c[3];
    const double d = c[0] / c[3];
    const double p = b - a * a / 3.0;
    const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + d;
    const double shift = -a / 3.0;
    const double disc = q * q / 4.0 + p * p * p / 27.0;
    if (disc > 0.0) {
      const double sq = std::sqrt(disc);
      const double u = std::cbrt(-q / 2.0 + sq);
      const double v = std::cbrt(-q / 2.0 - sq);
      roots.push_back(shift + u + v);
    } else {
      const double r = std::sqrt(std::max(0.0, -p / 3.0));
      if (r == 0.0) {
        roots.push_back(shift);
      } else {
        const double phi =
            std::acos(std::clamp(-q / (2.0 * r * r * r), -1.0, 1.0));
        for (int k = 0; k < 3; ++k) {
          roots.push_back(shift +
                          2.0 * r *
                              std::cos((phi + 2.0 * std::numbers::pi * k) /
                                       3.0));
        }
      }
    }
  } else {
    solve_quadratic(c[2], c[1], c[0], roots);
  }
  // polish with a few Newton steps, then filter to (lo, hi)
  std::vector<double> result;
  for (double r : roots) {
    for (int it = 0; it < 3; ++it) {
      const double f = eval_local(c, r);
      const double df = (3.0 * c[3] * r + 2.0 * c[2]) * r + c[1];
      if (df != 0.0) r -= f / df;
    }
    if (r > lo && r < hi) result.push_back(r);
  }
  std::sort(result.begin(), result.end());
  result.erase(std::unique(result.begin(), result.end()), result.end());
  return result;
}

PolyCells::PolyCells(std::vector<double> edges, std::vector<Coef> coef)
    : edges_(std::move(edges)), coef_(std::move(coef)) {
  if (edges_.size() != coef_.size() + 1 || coef_.empty()) {
    throw InternalError("PolyCells: need m+1 edges for m cells");
  }
  for (std::size_t k = 0; k + 1 < edges_.size(); ++k) {
    if (!(edges_[k] < edges_[k + 1])) {
      throw InternalError("PolyCells: edges must strictly increase");
    }
  }
}

PolyCells PolyCells::from_step(const StepDensity& p) {
  std::vector<Coef> coef(p.piece_count());
  for (std::size_t j = 0; j < p.piece_count(); ++j) {
    coef[j] = {p.values()[j], 0.0, 0.0, 0.0};
  }
  return PolyCells(p.breakpoints(), std::move(coef));
}

PolyCells PolyCells::from_reference(const ReferenceDensity& d) {
  switch (d.family()) {
    case ReferenceDensity::Family::Uniform:
      return PolyCells({0.0, d.support_end()},
                       {{1.0 / d.support_end(), 0.0, 0.0, 0.0}});
    case ReferenceDensity::Family::Linear: {
      // a - b x = (a - b e0) - b u in local coordinates with e0 = 0
      return PolyCells({0.0, d.support_end()},
                       {{d.param_a(), -d.param_b(), 0.0, 0.0}});
    }
    case ReferenceDensity::Family::StepJump: {
      std::vector<Coef> coef(d.step_heights().size());
      for (std::size_t j = 0; j < coef.size(); ++j) {
        coef[j] = {d.step_heights()[j], 0.0, 0.0, 0.0};
      }
      return PolyCells(d.step_edges(), std::move(coef));
    }
    case ReferenceDensity::Family::TruncExp:
      throw InputError(
          "PolyCells: truncExp is not piecewise polynomial; use the "
          "quadrature path");
  }
  throw InputError("PolyCells: unsupported family");
}

int PolyCells::degree() const {
  int deg = 0;
  for (const auto& c : coef_) {
    for (int d = 3; d > deg; --d) {
      if (c[static_cast<std::size_t>(d)] != 0.0) deg = d;
    }
  }
  return deg;
}

double PolyCells::operator()(double x) const {
  if (x < edges_.front() || x > edges_.back()) return 0.0;
  auto it = std::upper_bound(edges_.begin(), edges_.end(), x);
  std::size_t k = (it == edges_.begin())
                      ? 0
                      : static_cast<std::size_t>(it - edges_.begin()) - 1;
  if (k >= coef_.size()) k = coef_.size() - 1;  // x == last edge
  return eval_local(coef_[k], x - edges_[k]);
}

double PolyCells::integral() const {
  double acc = 0.0;
  for (std::size_t k = 0; k < coef_.size(); ++k) {
    acc += anti_local(coef_[k], edges_[k + 1] - edges_[k]);
  }
  return acc;
}

double PolyCells::integral_abs() const {
  double acc = 0.0;
  for (std::size_t k = 0; k < coef_.size(); ++k) {
    const double width = edges_[k + 1] - edges_[k];
    const auto roots = polynomial_roots_in(coef_[k], 0.0, width);
    double prev_anti = 0.0;
    auto flush = [&](double u) {
      const double anti = anti_local(coef_[k], u);
      acc += std::fabs(anti - prev_anti);
      prev_anti = anti;
    };
    for (double r : roots) flush(r);
    flush(width);
  }
  return acc;
}

PolyCells PolyCells::operator-(const PolyCells& other) const {
  std::vector<double> edges;
  edges.reserve(edges_.size() + other.edges_.size());
  edges.insert(edges.end(), edges_.begin(), edges_.end());
  edges.insert(edges.end(), other.edges_.begin(), other.edges_.end());
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  std::vector<Coef> coef(edges.size() - 1);
  for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
    const double lo = edges[k];
    // re-center each operand's local polynomial at lo
    Coef out = {0.0, 0.0, 0.0, 0.0};
    auto accumulate = [&](const PolyCells& f, double sign) {
      if (lo < f.edges_.front() || lo >= f.edges_.back()) return;
      auto it = std::upper_bound(f.edges_.begin(), f.edges_.end(), lo);
      const auto j = static_cast<std::size_t>(it - f.edges_.begin()) - 1;
      const double shift = lo - f.edges_[j];
      const auto& c = f.coef_[j];
      // expand c at (u + shift)
      out[0] += sign * eval_local(c, shift);
      out[1] += sign * ((3.0 * c[3] * shift + 2.0 * c[2]) * shift + c[1]);
      out[2] += sign * (3.0 * c[3] * shift + c[2]);
      out[3] += sign * c[3];
    };
    accumulate(*this, 1.0);
    accumulate(other, -1.0);
    coef[k] = out;
  }
  return PolyCells(std::move(edges), std::move(coef));
}

namespace {

// Cubic through 4 equally spaced exact values on [0, h]: Newton's divided
// differences expanded to monomial coefficients in the local coordinate.
PolyCells::Coef cubic_through(const std::array<double, 4>& t,
                              const std::array<double, 4>& w) {
  std::array<double, 4> dd = w;
  for (int lvl = 1; lvl < 4; ++lvl) {
    for (int i = 3; i >= lvl; --i) {
      dd[static_cast<std::size_t>(i)] =
          (dd[static_cast<std::size_t>(i)] -
           dd[static_cast<std::size_t>(i - 1)]) /
          (t[static_cast<std::size_t>(i)] -
           t[static_cast<std::size_t>(i - lvl)]);
    }
  }
  PolyCells::Coef c = {dd[0], 0.0, 0.0, 0.0};
  std::array<double, 4> basis = {1.0, 0.0, 0.0, 0.0};
  for (int i = 1; i < 4; ++i) {
    std::array<double, 4> next = {0.0, 0.0, 0.0, 0.0};
    for (int d = 0; d < 3; ++d) {
      next[static_cast<std::size_t>(d + 1)] +=
          basis[static_cast<std::size_t>(d)];
      next[static_cast<std::size_t>(d)] -=
          t[static_cast<std::size_t>(i - 1)] * basis[static_cast<std::size_t>(d)];
    }
    basis = next;
    for (int d = 0; d < 4; ++d) {
      c[static_cast<std::size_t>(d)] +=
          dd[static_cast<std::size_t>(i)] * basis[static_cast<std::size_t>(d)];
    }
  }
  return c;
}

// p(u + h) expressed in u.
PolyCells::Coef taylor_shift(const PolyCells::Coef& c, double h) {
  return {((c[3] * h + c[2]) * h + c[1]) * h + c[0],
          (3.0 * c[3] * h + 2.0 * c[2]) * h + c[1],
          3.0 * c[3] * h + c[2],
          c[3]};
}

}  // namespace

PolyCells PolyCells::convolve(const PolyCells& a, const PolyCells& b) {
  if (a.degree() > 1 || b.degree() > 1) {
    throw InputError("PolyCells::convolve: operands must be piecewise linear");
  }
  // global knot grid: all pairwise edge sums (exact duplicates collapsed)
  std::vector<double> edges;
  edges.reserve(a.edges_.size() * b.edges_.size());
  for (double ea : a.edges_) {
    for (double eb : b.edges_) edges.push_back(ea + eb);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  if (edges.size() < 2) {
    throw InternalError("PolyCells::convolve: degenerate knot set");
  }
  std::vector<Coef> coef(edges.size() - 1, Coef{0.0, 0.0, 0.0, 0.0});

  // Exact value of the single-pair convolution at z: the overlap of the two
  // piece supports carries a quadratic integrand, so 2-point Gauss-Legendre
  // is exact.
  constexpr double kGl2 = 0.5773502691896258;
  auto pair_value = [](double ai0, double ai1, const Coef& ca, double bj0,
                       double bj1, const Coef& cb, double z) {
    const double lo = std::max(ai0, z - bj1);
    const double hi = std::min(ai1, z - bj0);
    if (!(lo < hi)) return 0.0;
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    auto term = [&](double x) {
      const double ua = x - ai0;
      const double ub = (z - x) - bj0;
      return (ca[0] + ca[1] * ua) * (cb[0] + cb[1] * ub);
    };
    return half * (term(mid - half * kGl2) + term(mid + half * kGl2));
  };

  // Accumulate each pair's (at most three) cubic arcs onto the global cells.
  for (std::size_t i = 0; i < a.coef_.size(); ++i) {
    const double ai0 = a.edges_[i];
    const double ai1 = a.edges_[i + 1];
    for (std::size_t j = 0; j < b.coef_.size(); ++j) {
      const double bj0 = b.edges_[j];
      const double bj1 = b.edges_[j + 1];
      const double z0 = ai0 + bj0;
      const double z1 = std::min(ai0 + bj1, ai1 + bj0);
      const double z2 = std::max(ai0 + bj1, ai1 + bj0);
      const double z3 = ai1 + bj1;
      const double sub[4] = {z0, z1, z2, z3};
      for (int arc = 0; arc < 3; ++arc) {
        const double s = sub[arc];
        const double e = sub[arc + 1];
        if (!(e - s > 1e-15 * std::max(1.0, std::fabs(e)))) continue;
        const double h = e - s;
        const std::array<double, 4> t = {0.0, h / 3.0, 2.0 * h / 3.0, h};
        std::array<double, 4> w;
        for (int q = 0; q < 4; ++q) {
          w[static_cast<std::size_t>(q)] =
              pair_value(ai0, ai1, a.coef_[i], bj0, bj1, b.coef_[j],
                         s + t[static_cast<std::size_t>(q)]);
        }
        const Coef arc_poly = cubic_through(t, w);
        // global cells covered by [s, e]
        auto lo_it = std::lower_bound(edges.begin(), edges.end(), s);
        for (auto it = lo_it; it + 1 != edges.end() && *it < e; ++it) {
          const auto cell = static_cast<std::size_t>(it - edges.begin());
          coef[cell] = [&] {
            const Coef shifted = taylor_shift(arc_poly, *it - s);
            Coef sum = coef[cell];
            for (int d = 0; d < 4; ++d) {
              sum[static_cast<std::size_t>(d)] +=
                  shifted[static_cast<std::size_t>(d)];
            }
            return sum;
          }();
        }
      }
    }
  }
  return PolyCells(std::move(edges), std::move(coef));
}

double PiecewiseLinearFn::operator()(double x) const {
  if (x < knots.front() || x > knots.back()) return 0.0;
  auto it = std::lower_bound(knots.begin(), knots.end(), x);
  if (*it == x) return values[static_cast<std::size_t>(it - knots.begin())];
  const auto hi = static_cast<std::size_t>(it - knots.begin());
  const double t = (x - knots[hi - 1]) / (knots[hi] - knots[hi - 1]);
  return values[hi - 1] + t * (values[hi] - values[hi - 1]);
}

double PiecewiseLinearFn::integral() const {
  double acc = 0.0;
  for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
    acc += 0.5 * (values[k] + values[k + 1]) * (knots[k + 1] - knots[k]);
  }
  return acc;
}

}  // namespace grenander

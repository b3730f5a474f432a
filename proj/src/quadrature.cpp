#include "grenander/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace grenander {

namespace {

// 8-node Gauss-Legendre on [-1, 1].
constexpr std::array<double, 8> kGlNodes = {
    -0.9602898564975362, -0.7966664774136267, -0.5255324099163290,
    -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
    0.7966664774136267,  0.9602898564975362};
constexpr std::array<double, 8> kGlWeights = {
    0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
    0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
    0.2223810344533745, 0.1012285362903763};

double gl_cell(double a, double b, const std::function<double(double)>& f) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double acc = 0.0;
  for (std::size_t i = 0; i < kGlNodes.size(); ++i) {
    acc += kGlWeights[i] * f(mid + half * kGlNodes[i]);
  }
  return acc * half;
}

}  // namespace

EvaluableFunction as_function(const StepDensity& p) {
  return EvaluableFunction{[p](double x) { return p(x); }, p.breakpoints(), {}};
}

EvaluableFunction as_function(const ReferenceDensity& d) {
  return EvaluableFunction{[d](double x) { return d.pdf(x); }, d.breakpoints(),
                           {}};
}

EvaluableFunction constant_function(double c) {
  return EvaluableFunction{[c](double) { return c; }, {}, {}};
}

std::vector<double> build_partition(
    double a, double b, const std::vector<const std::vector<double>*>& edges,
    const std::vector<double>& rough_points, const QuadratureSpec& spec) {
  std::vector<double> base;
  base.push_back(a);
  base.push_back(b);
  for (const auto* list : edges) {
    for (double x : *list) {
      if (x > a && x < b) base.push_back(x);
    }
  }
  for (double r : rough_points) {
    if (r > a && r < b) base.push_back(r);
  }
  std::sort(base.begin(), base.end());
  base.erase(std::unique(base.begin(), base.end()), base.end());

  const int k = std::max(1, spec.subdivisions);
  std::vector<double> part;
  part.reserve(base.size() * static_cast<std::size_t>(k));
  for (std::size_t c = 0; c + 1 < base.size(); ++c) {
    const double lo = base[c];
    const double hi = base[c + 1];
    part.push_back(lo);

    const double width = hi - lo;
    for (int j = 1; j < k; ++j) {
      part.push_back(lo + width * static_cast<double>(j) /
                              static_cast<double>(k));
    }
    // dyadic grading toward rough endpoints of this cell
    if (std::binary_search(rough_points.begin(), rough_points.end(), lo)) {
      for (int j = 1; j <= spec.grade_levels; ++j) {
        part.push_back(lo + width * std::ldexp(1.0, -j - 1));
      }
    }
    if (std::binary_search(rough_points.begin(), rough_points.end(), hi)) {
      for (int j = 1; j <= spec.grade_levels; ++j) {
        part.push_back(hi - width * std::ldexp(1.0, -j - 1));
      }
    }
  }
  part.push_back(base.back());
  std::sort(part.begin(), part.end());
  part.erase(std::unique(part.begin(), part.end()), part.end());
  return part;
}

double integrate_partition(const std::vector<double>& partition,
                           const std::function<double(double)>& f) {
  double acc = 0.0;
  for (std::size_t c = 0; c + 1 < partition.size(); ++c) {
    acc += gl_cell(partition[c], partition[c + 1], f);
  }
  return acc;
}

double integrate_abs_partition(const std::vector<double>& partition,
                               const std::function<double(double)>& f) {
  double acc = 0.0;
  for (std::size_t c = 0; c + 1 < partition.size(); ++c) {
    double lo = partition[c];
    double hi = partition[c + 1];
    const double mid = 0.5 * (lo + hi);
    const double flo = f(lo + 1e-14 * (hi - lo));
    const double fmid = f(mid);
    const double fhi = f(hi - 1e-14 * (hi - lo));
    const bool flip = (flo < 0) != (fhi < 0) || (flo < 0) != (fmid < 0);
    if (!flip) {
      acc += std::fabs(gl_cell(lo, hi, f));
      continue;
    }
    // bisect the sign changes, then integrate each signed segment
    std::vector<double> cuts = {lo, hi};
    auto add_root = [&](double x0, double x1) {
      double f0 = f(x0);
      for (int it = 0; it < 60; ++it) {
        const double xm = 0.5 * (x0 + x1);
        const double fm = f(xm);
        if ((f0 < 0) != (fm < 0)) {
          x1 = xm;
        } else {
          x0 = xm;
          f0 = fm;
        }
      }
      cuts.push_back(0.5 * (x0 + x1));
    };
    if ((flo < 0) != (fmid < 0)) add_root(lo, mid);
    if ((fmid < 0) != (fhi < 0)) add_root(mid, hi);
    std::sort(cuts.begin(), cuts.end());
    for (std::size_t j = 0; j + 1 < cuts.size(); ++j) {
      acc += std::fabs(gl_cell(cuts[j], cuts[j + 1], f));
    }
  }
  return acc;
}

double integrate_aligned(double end,
                         const std::vector<const EvaluableFunction*>& fs,
                         const std::function<double(double)>& integrand,
                         const QuadratureSpec& spec) {
  std::vector<const std::vector<double>*> edges;
  std::vector<double> rough;
  for (const auto* f : fs) {
    edges.push_back(&f->breakpoints);
    for (double r : f->rough_points) rough.push_back(r);
  }
  std::sort(rough.begin(), rough.end());
  rough.erase(std::unique(rough.begin(), rough.end()), rough.end());
  const auto part = build_partition(0.0, end, edges, rough, spec);
  return integrate_partition(part, integrand);
}

}  // namespace grenander

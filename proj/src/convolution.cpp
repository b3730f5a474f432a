#include "grenander/convolution.hpp"

#include <algorithm>
#include <cmath>

#include "grenander/errors.hpp"

namespace grenander {

namespace {

bool polynomial_family(const ReferenceDensity& d) {
  return d.family() != ReferenceDensity::Family::TruncExp;
}

StepDensity step_representation(const ReferenceDensity& d) {
  switch (d.family()) {
    case ReferenceDensity::Family::Uniform:
      return StepDensity({0.0, d.support_end()}, {1.0 / d.support_end()});
    case ReferenceDensity::Family::StepJump:
      return StepDensity(d.step_edges(), d.step_heights());
    default:
      throw InputError("step_representation: family is not a step density");
  }
}

// Quadrature evaluator for int a(x) b(z - x) dx with arbitrary piecewise
// operands: merge both breakpoint grids at the given z and apply 8-node
// Gauss-Legendre per cell.
double convolve_eval(const EvaluableFunction& a, double a_end,
                     const EvaluableFunction& b, double b_end, double z) {
  const double lo = std::max(0.0, z - b_end);
  const double hi = std::min(a_end, z);
  if (!(lo < hi)) return 0.0;
  std::vector<double> cuts = {lo, hi};
  for (double e : a.breakpoints) {
    if (e > lo && e < hi) cuts.push_back(e);
  }
  for (double e : b.breakpoints) {
    const double x = z - e;
    if (x > lo && x < hi) cuts.push_back(x);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  QuadratureSpec spec;
  spec.subdivisions = 16;
  const auto part = build_partition(lo, hi, {&cuts}, {}, spec);
  return integrate_partition(part, [&](double x) { return a(x) * b(z - x); });
}

}  // namespace

PiecewiseLinearFn convolve_steps(const StepDensity& p, const StepDensity& q) {
  const PolyCells conv =
      PolyCells::convolve(PolyCells::from_step(p), PolyCells::from_step(q));
  PiecewiseLinearFn out;
  out.knots = conv.edges();
  out.values.reserve(out.knots.size());
  for (double z : out.knots) out.values.push_back(conv(z));
  // endpoints of a density convolution are exact zeros
  out.values.front() = 0.0;
  out.values.back() = 0.0;
  return out;
}

EvaluableFunction convolve_reference(const ReferenceDensity& d1,
                                     const ReferenceDensity& d2) {
  const bool step1 = d1.family() == ReferenceDensity::Family::Uniform ||
                     d1.family() == ReferenceDensity::Family::StepJump;
  const bool step2 = d2.family() == ReferenceDensity::Family::Uniform ||
                     d2.family() == ReferenceDensity::Family::StepJump;
  if (step1 && step2) {
    PiecewiseLinearFn pl =
        convolve_steps(step_representation(d1), step_representation(d2));
    EvaluableFunction out;
    out.breakpoints = pl.knots;
    out.eval = [pl = std::move(pl)](double z) { return pl(z); };
    return out;
  }
  EvaluableFunction a = as_function(d1);
  EvaluableFunction b = as_function(d2);
  const double a_end = d1.support_end();
  const double b_end = d2.support_end();
  EvaluableFunction out;
  for (double ea : a.breakpoints) {
    for (double eb : b.breakpoints) out.breakpoints.push_back(ea + eb);
  }
  std::sort(out.breakpoints.begin(), out.breakpoints.end());
  out.breakpoints.erase(
      std::unique(out.breakpoints.begin(), out.breakpoints.end()),
      out.breakpoints.end());
  out.eval = [a = std::move(a), b = std::move(b), a_end, b_end](double z) {
    return convolve_eval(a, a_end, b, b_end, z);
  };
  return out;
}

DecompositionTerms decomposition_terms(const StepDensity& p_hat,
                                       const StepDensity& q_hat,
                                       const ReferenceDensity& d1,
                                       const ReferenceDensity& d2) {
  DecompositionTerms out{};
  if (polynomial_family(d1) && polynomial_family(d2)) {
    const PolyCells u =
        PolyCells::from_step(p_hat) - PolyCells::from_reference(d1);
    const PolyCells v =
        PolyCells::from_step(q_hat) - PolyCells::from_reference(d2);
    out.term_p_l1 =
        PolyCells::convolve(u, PolyCells::from_reference(d2)).integral_abs();
    out.term_q_l1 =
        PolyCells::convolve(v, PolyCells::from_reference(d1)).integral_abs();
    out.cross_l1 = PolyCells::convolve(u, v).integral_abs();
    out.young_bound = u.integral_abs() * v.integral_abs();
    return out;
  }

  // quadrature fallback for truncExp operands
  const double end1 = std::max(p_hat.support_end(), d1.support_end());
  const double end2 = std::max(q_hat.support_end(), d2.support_end());
  EvaluableFunction u = as_function(p_hat);
  {
    const StepDensity ph = p_hat;
    const ReferenceDensity dd = d1;
    u.eval = [ph, dd](double x) { return ph(x) - dd.pdf(x); };
    u.breakpoints.insert(u.breakpoints.end(), d1.breakpoints().begin(),
                         d1.breakpoints().end());
    std::sort(u.breakpoints.begin(), u.breakpoints.end());
    u.breakpoints.erase(std::unique(u.breakpoints.begin(), u.breakpoints.end()),
                        u.breakpoints.end());
  }
  EvaluableFunction v = as_function(q_hat);
  {
    const StepDensity qh = q_hat;
    const ReferenceDensity dd = d2;
    v.eval = [qh, dd](double x) { return qh(x) - dd.pdf(x); };
    v.breakpoints.insert(v.breakpoints.end(), d2.breakpoints().begin(),
                         d2.breakpoints().end());
    std::sort(v.breakpoints.begin(), v.breakpoints.end());
    v.breakpoints.erase(std::unique(v.breakpoints.begin(), v.breakpoints.end()),
                        v.breakpoints.end());
  }

  auto l1_of_convolution = [](const EvaluableFunction& a, double a_end,
                              const EvaluableFunction& b, double b_end) {
    std::vector<double> knots;
    for (double ea : a.breakpoints) {
      for (double eb : b.breakpoints) knots.push_back(ea + eb);
    }
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
    QuadratureSpec spec;
    const auto part =
        build_partition(knots.front(), knots.back(), {&knots}, {}, spec);
    return integrate_abs_partition(part, [&](double z) {
      return convolve_eval(a, a_end, b, b_end, z);
    });
  };

  const EvaluableFunction q0 = as_function(d2);
  const EvaluableFunction p0 = as_function(d1);
  out.term_p_l1 = l1_of_convolution(u, end1, q0, d2.support_end());
  out.term_q_l1 = l1_of_convolution(v, end2, p0, d1.support_end());
  out.cross_l1 = l1_of_convolution(u, end1, v, end2);

  QuadratureSpec spec;
  const auto part_u = build_partition(0.0, end1, {&u.breakpoints}, {}, spec);
  const auto part_v = build_partition(0.0, end2, {&v.breakpoints}, {}, spec);
  const double l1_u =
      integrate_abs_partition(part_u, [&](double x) { return u(x); });
  const double l1_v =
      integrate_abs_partition(part_v, [&](double x) { return v(x); });
  out.young_bound = l1_u * l1_v;
  return out;
}

}  // namespace grenander

#pragma once

#include "grenander/piecewise.hpp"
#include "grenander/quadrature.hpp"
#include "grenander/reference_density.hpp"
#include "grenander/step_density.hpp"

namespace grenander {

// Exact convolution of two step densities: continuous piecewise-linear with
// knots at all pairwise sums of the operands' breakpoints (no pruning of
// collinear knots) and total mass (int p)(int q).
PiecewiseLinearFn convolve_steps(const StepDensity& p, const StepDensity& q);

// p_0 * q_0 for two reference densities. Exact piecewise-linear closed form
// when both families are step shaped (uniform, stepJump); otherwise an
// evaluable backed by breakpoint-aligned quadrature (abs tol 1e-8).
EvaluableFunction convolve_reference(const ReferenceDensity& d1,
                                     const ReferenceDensity& d2);

// L^1 norms of the three terms of
//   hat p * hat q - p_0 * q_0 =
//     (hat p - p_0) * q_0 + (hat q - q_0) * p_0 + (hat p - p_0)*(hat q - q_0)
// plus the Young bound ||hat p - p_0||_1 ||hat q - q_0||_1 on the cross term.
// Exact piecewise-polynomial integration when both references are polynomial
// families; quadrature fallback covers truncExp operands.
struct DecompositionTerms {
  double term_p_l1;      // ||(hat p - p_0) * q_0||_1
  double term_q_l1;      // ||(hat q - q_0) * p_0||_1
  double cross_l1;       // ||(hat p - p_0) * (hat q - q_0)||_1
  double young_bound;    // ||hat p - p_0||_1 * ||hat q - q_0||_1
};

DecompositionTerms decomposition_terms(const StepDensity& p_hat,
                                       const StepDensity& q_hat,
                                       const ReferenceDensity& d1,
                                       const ReferenceDensity& d2);

}  // namespace grenander

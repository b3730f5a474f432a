#pragma once

#include "grenander/empirical_cdf.hpp"
#include "grenander/majorant.hpp"
#include "grenander/quadrature.hpp"
#include "grenander/reference_density.hpp"
#include "grenander/step_density.hpp"

namespace grenander {

// Distances between densities. Pairs of step densities take an exact
// closed-form path (per-cell constants on the merged breakpoint grid);
// everything else integrates on a breakpoint-aligned partition.

// h with h^2 = (1/2) int (sqrt(p) - sqrt(q))^2; values in [0, 1].
double hellinger(const StepDensity& p, const StepDensity& q);
double hellinger(const StepDensity& p, const ReferenceDensity& q,
                 const QuadratureSpec& spec = {});
double hellinger(const EvaluableFunction& p, const EvaluableFunction& q,
                 double support_end, const QuadratureSpec& spec = {});

double l2_distance(const StepDensity& p, const StepDensity& q);
double l2_distance(const StepDensity& p, const ReferenceDensity& q,
                   const QuadratureSpec& spec = {});
double l2_distance(const EvaluableFunction& p, const EvaluableFunction& q,
                   double support_end, const QuadratureSpec& spec = {});

double l1_distance(const StepDensity& p, const StepDensity& q);
double l1_distance(const StepDensity& p, const ReferenceDensity& q,
                   const QuadratureSpec& spec = {});
double l1_distance(const EvaluableFunction& p, const EvaluableFunction& q,
                   double support_end, const QuadratureSpec& spec = {});

// Exact sup of \hat F_n - F_n. The majorant dominates the step function, so
// the supremum is attained at a jump point, approached from the left or at
// the point itself; both candidates are evaluated at every jump. Throws
// InternalError when M fails to dominate F beyond tolerance (inconsistent
// operands). At a jump located exactly at 0 domination is checked against
// the left limit, matching the (0,0) hull anchor.
double sup_diff_cdf(const ConcaveMajorant& m, const EmpiricalCdf& f);

}  // namespace grenander

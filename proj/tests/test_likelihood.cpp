#include <doctest.h>

#include <array>
#include <cmath>

#include "grenander/errors.hpp"
#include "grenander/fit.hpp"
#include "grenander/likelihood.hpp"
#include "test_util.hpp"

using namespace grenander;

namespace {

const ReferenceDensity kUniform = ReferenceDensity::uniform(1.0);
const ReferenceDensity kLinear = ReferenceDensity::linear(1.5, 1.0, 1.0);
const ReferenceDensity kSplit =
    ReferenceDensity::step_jump({0.0, 0.5, 1.0}, {1.5, 0.5});

EvaluableFunction difference(const StepDensity& fit,
                             const ReferenceDensity& d) {
  EvaluableFunction out = as_function(fit);
  out.eval = [fit, d](double x) { return fit(x) - d.pdf(x); };
  out.breakpoints.insert(out.breakpoints.end(), d.breakpoints().begin(),
                         d.breakpoints().end());
  std::sort(out.breakpoints.begin(), out.breakpoints.end());
  out.breakpoints.erase(
      std::unique(out.breakpoints.begin(), out.breakpoints.end()),
      out.breakpoints.end());
  return out;
}

}  // namespace

TEST_CASE("pi0 projection") {
  // f constant on the support projects to the zero function
  const auto zero = pi0_projection(TestFunction::indicator(2.0), kUniform);
  CHECK(zero(0.3) == doctest::Approx(0.0).epsilon(1e-12));

  // P_0 f = F_0(0.5) = 0.75 under the split density
  const auto ind = pi0_projection(TestFunction::indicator(0.5), kSplit);
  CHECK(ind(0.75) == doctest::Approx(-0.375).epsilon(1e-10));

  // f(x) = x under uniform[0,1]: (x - 1/2) * 1
  const auto lin = pi0_projection(TestFunction::hoelder("identity"), kUniform);
  CHECK(lin(0.3) == doctest::Approx(-0.2).epsilon(1e-10));
  CHECK(lin(0.9) == doctest::Approx(0.4).epsilon(1e-10));
}

TEST_CASE("pi0 integrates to zero for every shipped pair") {
  const std::array<TestFunction, 3> fs = {TestFunction::hoelder("cos2pi"),
                                          TestFunction::hoelder("absPower06"),
                                          TestFunction::hoelder("identity")};
  for (const auto& d : {kUniform, kLinear, kSplit}) {
    for (const auto& f : fs) {
      const auto pi0 = pi0_projection(f, d);
      const double mass = integrate_aligned(
          d.support_end(), {&pi0}, [&](double x) { return pi0(x); },
          likelihood_quadrature());
      CHECK(std::fabs(mass) <= 1e-10);
    }
    const auto pi0 = pi0_projection(TestFunction::indicator(0.5), d);
    const double mass = integrate_aligned(
        d.support_end(), {&pi0}, [&](double x) { return pi0(x); },
        likelihood_quadrature());
    CHECK(std::fabs(mass) <= 1e-10);
  }
}

TEST_CASE("the limiting score vanishes in tangent directions") {
  // D ell(p_0)[pi_0(f)] = int pi_0(f) = 0
  const std::array<TestFunction, 3> fs = {TestFunction::hoelder("cos2pi"),
                                          TestFunction::hoelder("absPower06"),
                                          TestFunction::indicator(0.5)};
  for (const auto& d : {kUniform, kLinear, kSplit}) {
    for (const auto& f : fs) {
      const auto pi0 = pi0_projection(f, d);
      const std::array<EvaluableFunction, 1> dirs = {pi0};
      const double score = dlog_likelihood(1, as_function(d), dirs, d);
      CHECK(std::fabs(score) <= 1e-8);
    }
  }
}

TEST_CASE("hoelder members satisfy their stated modulus") {
  rng::CounterRng gen(10);
  for (const auto& name : {"cos2pi", "absPower06", "identity"}) {
    const TestFunction f = TestFunction::hoelder(name);
    const double norm = *f.holder_norm();
    const double s = f.holder_exponent();
    for (int rep = 0; rep < 200; ++rep) {
      const double x = gen.next_unit();
      const double y = gen.next_unit();
      CHECK(std::fabs(f(x) - f(y)) <=
            norm * std::pow(std::fabs(x - y), s) + 1e-12);
    }
  }
}

TEST_CASE("perturbation bound formula") {
  // K = 1.5, zeta = 0.5, ||f|| = 1, ||Df/Dp0|| = 1 -> min(1/6, 1/4)
  const double bound =
      perturbation_bound(TestFunction::hoelder("identity"), kLinear);
  CHECK(bound == doctest::Approx(1.0 / 6.0).epsilon(1e-14));

  // zero direction: no constraint binds
  CHECK(std::isinf(
      perturbation_bound(TestFunction::hoelder("zero"), kLinear)));

  // a steeper functional (larger ratio norm) never loosens the bound
  CHECK(perturbation_bound(TestFunction::hoelder("cos2pi"), kLinear) <=
        bound);

  // unresolvable ratio norm
  CHECK_THROWS_AS(
      perturbation_bound(TestFunction::hoelder("cos2pi"), kUniform),
      InputError);
  CHECK_THROWS_AS(
      perturbation_bound(TestFunction::hoelder("absPower06"), kLinear),
      InputError);
}

TEST_CASE("perturbation validity on the grid") {
  const TestFunction f = TestFunction::hoelder("identity");
  const auto dir = pi0_projection(f, kLinear);
  const double eta_max = perturbation_bound(f, kLinear);

  CHECK(check_perturbation_valid({0.0, dir, kLinear}).valid);
  CHECK(check_perturbation_valid({eta_max, dir, kLinear}).valid);
  CHECK(check_perturbation_valid({-eta_max, dir, kLinear}).valid);

  const auto report = check_perturbation_valid({10.0 * eta_max, dir, kLinear});
  CHECK(!report.valid);
  CHECK(report.violation == "monotonicity");
}

TEST_CASE("Frechet derivative formulas") {
  const EvaluableFunction one = constant_function(1.0);
  const std::array<EvaluableFunction, 1> dir1 = {one};
  const std::array<EvaluableFunction, 2> dir2 = {one, one};
  const std::array<EvaluableFunction, 3> dir3 = {one, one, one};

  // alpha = 1, p == 1: P_n(1) = 1
  const Sample s = make_sample({0.2, 0.5, 0.9});
  CHECK(dlog_likelihood(1, one, dir1, s) == doctest::Approx(1.0));

  // alpha = 1 at the fit in direction (fit - p_0)
  const Sample two = make_sample({0.5, 0.6});
  const StepDensity fit = grenander_fit(two);
  const std::array<EvaluableFunction, 1> dirs = {difference(fit, kUniform)};
  CHECK(dlog_likelihood(1, as_function(fit), dirs, two) ==
        doctest::Approx(0.4).epsilon(1e-14));

  // alpha = 2: sign (-1)^{alpha-1} (alpha-1)! = -1
  CHECK(dlog_likelihood(2, one, dir2, kUniform) ==
        doctest::Approx(-1.0).epsilon(1e-12));
  // alpha = 3: +2
  CHECK(dlog_likelihood(3, one, dir3, kUniform) ==
        doctest::Approx(2.0).epsilon(1e-12));

  CHECK_THROWS_AS(dlog_likelihood(4, one, dir1, s), InputError);
  const EvaluableFunction bad = constant_function(-1.0);
  CHECK_THROWS_AS(dlog_likelihood(1, bad, dir1, s), InputError);
}

TEST_CASE("score_self") {
  // a density matching the fit at the data gives a zero score
  const Sample two = make_sample({0.5, 0.6});
  const StepDensity fit = grenander_fit(two);
  CHECK(score_self(fit, two, ReferenceDensity::uniform(0.6)) ==
        doctest::Approx(0.0).epsilon(1e-14));

  CHECK(score_self(two, kUniform) == doctest::Approx(0.4).epsilon(1e-14));

  // at the maximizer the score against the truth is non-negative
  rng::CounterRng gen(11);
  for (int rep = 0; rep < 50; ++rep) {
    const Sample s = kLinear.sample_iid(60, gen.next_u64());
    CHECK(score_self(s, kLinear) >= -1e-12);
  }
}

TEST_CASE("plugin_minus_empirical") {
  const Sample two = make_sample({0.5, 0.6});
  const StepDensity fit = grenander_fit(two);

  // f == 1 on the support: both measures are probabilities
  CHECK(plugin_minus_empirical(fit, two, TestFunction::indicator(5.0)) ==
        doctest::Approx(0.0).epsilon(1e-15));

  // at a hull vertex hat F_n = F_n
  const Sample three = make_sample({0.2, 0.5, 0.9});
  const StepDensity fit3 = grenander_fit(three);
  CHECK(plugin_minus_empirical(fit3, three, TestFunction::indicator(0.5)) ==
        doctest::Approx(0.0).epsilon(1e-14));

  CHECK(plugin_minus_empirical(fit, two, TestFunction::indicator(0.5)) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("adding a constant to f leaves (hat P_n - P_n)(f) unchanged") {
  rng::CounterRng gen(12);
  const Sample s = kLinear.sample_iid(40, 99);
  const StepDensity fit = grenander_fit(s);
  const TestFunction f = TestFunction::hoelder("cos2pi");
  const double base = plugin_minus_empirical(fit, s, f);
  for (double c : {-1.0, 0.5, 3.0}) {
    // same integration path as the library, with f + c
    const EvaluableFunction density = as_function(fit);
    EvaluableFunction shifted = f.fn();
    const auto eval = f.fn().eval;
    shifted.eval = [eval, c](double x) { return eval(x) + c; };
    double fitted = integrate_aligned(
        fit.support_end(), {&shifted, &density},
        [&](double x) { return shifted(x) * fit(x); }, likelihood_quadrature());
    double empirical = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) empirical += shifted(s[i]);
    empirical /= static_cast<double>(s.size());
    CHECK(fitted - empirical == doctest::Approx(base).epsilon(1e-10));
  }
  (void)gen;
}

TEST_CASE("clt_statistic") {
  const Sample two = make_sample({0.5, 0.6});
  const StepDensity fit = grenander_fit(two);

  // constant f: exact zero
  CHECK(clt_statistic(fit, kUniform, TestFunction::indicator(5.0), 2) == 0.0);

  // sqrt(2) (hat F_n(0.5) - F_0(0.5)) = sqrt(2) (5/6 - 1/2) = sqrt(2)/3
  CHECK(clt_statistic(fit, kUniform, TestFunction::indicator(0.5), 2) ==
        doctest::Approx(std::sqrt(2.0) / 3.0).epsilon(1e-14));
}

TEST_CASE("limit_variance") {
  CHECK(limit_variance(TestFunction::indicator(5.0), kUniform) == 0.0);
  CHECK(limit_variance(TestFunction::indicator(0.5), kSplit) ==
        doctest::Approx(0.1875).epsilon(1e-15));
  CHECK(limit_variance(TestFunction::hoelder("identity"), kUniform) ==
        doctest::Approx(1.0 / 12.0).epsilon(1e-10));
  // P_0 cos(2 pi x) = 0 under 1.5 - x; P_0 cos^2 = 3/4 - 1/4
  CHECK(limit_variance(TestFunction::hoelder("cos2pi"), kLinear) ==
        doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("gaussian_covariance") {
  const TestFunction f = TestFunction::indicator(0.3);
  const TestFunction g = TestFunction::indicator(0.7);
  CHECK(gaussian_covariance(f, g, kUniform) ==
        doctest::Approx(0.09).epsilon(1e-10));
  CHECK(gaussian_covariance(f, f, kUniform) ==
        doctest::Approx(limit_variance(f, kUniform)).epsilon(1e-10));
  CHECK(std::fabs(gaussian_covariance(TestFunction::indicator(5.0), g,
                                      kUniform)) <= 1e-10);
}

TEST_CASE("plug-in identity: empirical score plus curvature term") {
  // |(hat P_n - P_n)(f)| = |D ell_n(p_0)[pi_0(f)] + D^2 ell(p_0)[...]|
  rng::CounterRng gen(13);
  const std::array<TestFunction, 2> fs = {TestFunction::hoelder("cos2pi"),
                                          TestFunction::hoelder("identity")};
  for (int rep = 0; rep < 15; ++rep) {
    const Sample s = kLinear.sample_iid(120, gen.next_u64());
    const StepDensity fit = grenander_fit(s);
    for (const auto& f : fs) {
      const double lhs = std::fabs(plugin_minus_empirical(fit, s, f));
      const auto pi0 = pi0_projection(f, kLinear);
      const std::array<EvaluableFunction, 1> d1 = {pi0};
      const double score = dlog_likelihood(1, as_function(kLinear), d1, s);
      const std::array<EvaluableFunction, 2> d2 = {difference(fit, kLinear),
                                                   pi0};
      const double curvature =
          dlog_likelihood(2, as_function(kLinear), d2, kLinear);
      CHECK(lhs == doctest::Approx(std::fabs(score + curvature))
                       .epsilon(1e-6));
    }
  }
}

TEST_CASE("boundary inequality at eta_max/2") {
  // |D ell_n(hat p)[pi_0(f)]| <= (1/eta) |D ell_n(hat p)[hat p - p_0]|
  rng::CounterRng gen(14);
  const TestFunction f = TestFunction::hoelder("identity");
  const auto pi0 = pi0_projection(f, kLinear);
  const double eta = perturbation_bound(f, kLinear) / 2.0;
  REQUIRE(check_perturbation_valid({eta, pi0, kLinear}).valid);
  REQUIRE(check_perturbation_valid({-eta, pi0, kLinear}).valid);
  for (int rep = 0; rep < 20; ++rep) {
    const Sample s = kLinear.sample_iid(100, gen.next_u64());
    const StepDensity fit = grenander_fit(s);
    const std::array<EvaluableFunction, 1> dir = {pi0};
    const double lhs =
        std::fabs(dlog_likelihood(1, as_function(fit), dir, s));
    const double rhs = std::fabs(score_self(fit, s, kLinear)) / eta;
    CHECK(lhs <= rhs + 1e-12);
  }
}

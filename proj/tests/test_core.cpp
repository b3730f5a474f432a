#include <doctest.h>

#include <cmath>

#include "grenander/errors.hpp"
#include "grenander/fit.hpp"
#include "grenander/metrics.hpp"
#include "test_util.hpp"

using namespace grenander;

TEST_CASE("make_sample sorts and validates") {
  const Sample s = make_sample({0.9, 0.2, 0.5});
  CHECK(s.values() == std::vector<double>{0.2, 0.5, 0.9});
  CHECK(make_sample({1.0}).size() == 1);

  CHECK_THROWS_AS(make_sample({}), InputError);
  CHECK_THROWS_WITH_AS(make_sample({0.5, -0.1}),
                       "make_sample: negative value at index 1", InputError);
  CHECK_THROWS_AS(make_sample({0.5, std::nan("")}), InputError);
}

TEST_CASE("empirical_cdf heights are cumulative multiplicities") {
  const EmpiricalCdf one = empirical_cdf(make_sample({1.0}));
  CHECK(one.jump_points() == std::vector<double>{1.0});
  CHECK(one.heights() == std::vector<double>{1.0});

  const EmpiricalCdf thirds = empirical_cdf(make_sample({0.2, 0.5, 0.9}));
  CHECK(thirds.heights()[0] == doctest::Approx(1.0 / 3).epsilon(1e-15));
  CHECK(thirds.heights()[1] == doctest::Approx(2.0 / 3).epsilon(1e-15));
  CHECK(thirds.heights()[2] == 1.0);

  const EmpiricalCdf dup = empirical_cdf(make_sample({0.5, 0.5}));
  CHECK(dup.jump_points() == std::vector<double>{0.5});
  CHECK(dup.heights() == std::vector<double>{1.0});

  CHECK(thirds(0.5) == doctest::Approx(2.0 / 3));
  CHECK(thirds.left_limit(0.5) == doctest::Approx(1.0 / 3));
  CHECK(thirds(0.1) == 0.0);
  CHECK(thirds(2.0) == 1.0);
}

TEST_CASE("least concave majorant pools non-vertices") {
  const auto single = least_concave_majorant(empirical_cdf(make_sample({1.0})));
  REQUIRE(single.vertices().size() == 2);
  CHECK(single.vertices()[0].x == 0.0);
  CHECK(single.vertices()[0].y == 0.0);
  CHECK(single.vertices()[1].x == 1.0);
  CHECK(single.vertices()[1].y == 1.0);

  // interior point (0.5, 0.5) lies below the chord to (0.6, 1)
  const auto pooled =
      least_concave_majorant(empirical_cdf(make_sample({0.5, 0.6})));
  REQUIRE(pooled.vertices().size() == 2);
  CHECK(pooled.vertices()[1].x == 0.6);

  // slopes 5/3 > 10/9 > 5/6: every ECDF point is a vertex
  const auto concave =
      least_concave_majorant(empirical_cdf(make_sample({0.2, 0.5, 0.9})));
  REQUIRE(concave.vertices().size() == 4);
  CHECK(concave.vertices()[1].x == 0.2);
  CHECK(concave.vertices()[2].x == 0.5);
  CHECK(concave.vertices()[3].x == 0.9);

  // collinear ECDF points are not vertices
  const auto collinear = least_concave_majorant(
      empirical_cdf(make_sample({0.25, 0.5, 0.75, 1.0})));
  CHECK(collinear.vertices().size() == 2);

  CHECK_THROWS_AS(least_concave_majorant(empirical_cdf(make_sample({0.0}))),
                  InputError);
}

TEST_CASE("grenander_fit takes hull slopes") {
  const StepDensity one = grenander_fit(make_sample({1.0}));
  CHECK(one.breakpoints() == std::vector<double>{0.0, 1.0});
  CHECK(one.values() == std::vector<double>{1.0});

  const StepDensity pooled = grenander_fit(make_sample({0.5, 0.6}));
  REQUIRE(pooled.piece_count() == 1);
  CHECK(pooled.values()[0] == doctest::Approx(5.0 / 3).epsilon(1e-14));

  const StepDensity three = grenander_fit(make_sample({0.2, 0.5, 0.9}));
  REQUIRE(three.piece_count() == 3);
  CHECK(three.values()[0] == doctest::Approx(5.0 / 3).epsilon(1e-14));
  CHECK(three.values()[1] == doctest::Approx(10.0 / 9).epsilon(1e-14));
  CHECK(three.values()[2] == doctest::Approx(5.0 / 6).epsilon(1e-14));
}

TEST_CASE("grenander_oracle enumerates difference quotients") {
  CHECK(grenander_oracle(make_sample({1.0}), 0.5) == doctest::Approx(1.0));
  CHECK(grenander_oracle(make_sample({0.5, 0.6}), 0.55) ==
        doctest::Approx(5.0 / 3).epsilon(1e-12));
  CHECK(grenander_oracle(make_sample({0.2, 0.5, 0.9}), 0.7) ==
        doctest::Approx(5.0 / 6).epsilon(1e-12));

  CHECK_THROWS_AS(grenander_oracle(make_sample({1.0}), 0.0), InputError);
  CHECK_THROWS_AS(grenander_oracle(make_sample({1.0}), 1.5), InputError);
}

TEST_CASE("eval_density is left-continuous and vanishes beyond support") {
  const StepDensity one = grenander_fit(make_sample({1.0}));
  CHECK(eval_density(one, 0.3) == 1.0);

  const StepDensity three = grenander_fit(make_sample({0.2, 0.5, 0.9}));
  CHECK(eval_density(three, 0.2) == doctest::Approx(5.0 / 3).epsilon(1e-14));
  CHECK(eval_density(three, std::nextafter(0.2, 1.0)) ==
        doctest::Approx(10.0 / 9).epsilon(1e-14));
  CHECK(eval_density(three, 0.95) == 0.0);
  CHECK(eval_density(three, 0.0) == doctest::Approx(5.0 / 3).epsilon(1e-14));
}

TEST_CASE("eval_fitted_cdf interpolates the hull") {
  const auto one = least_concave_majorant(empirical_cdf(make_sample({1.0})));
  CHECK(eval_fitted_cdf(one, 0.0) == 0.0);
  CHECK(eval_fitted_cdf(one, 0.25) == doctest::Approx(0.25).epsilon(1e-15));

  const auto three =
      least_concave_majorant(empirical_cdf(make_sample({0.2, 0.5, 0.9})));
  CHECK(eval_fitted_cdf(three, 0.35) == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(eval_fitted_cdf(three, 2.0) == 1.0);
}

TEST_CASE("log_likelihood") {
  const Sample s = make_sample({0.2, 0.5, 0.9});
  const StepDensity uniform({0.0, 1.0}, {1.0});
  CHECK(log_likelihood(uniform, s) == 0.0);

  CHECK(log_likelihood(grenander_fit(make_sample({1.0})),
                       make_sample({1.0})) == 0.0);

  // (ln(5/3) + ln(10/9) + ln(5/6)) / 3
  CHECK(log_likelihood(grenander_fit(s), s) ==
        doctest::Approx(0.14462152754328746).epsilon(1e-12));

  const StepDensity narrow({0.0, 0.5}, {2.0});
  CHECK_THROWS_AS(log_likelihood(narrow, s), InputError);
}

TEST_CASE("bounds_diagnostics returns the extreme piece values") {
  const Sample one = make_sample({1.0});
  const auto d1 = bounds_diagnostics(grenander_fit(one), one);
  CHECK(d1.min_on_data == 1.0);
  CHECK(d1.max_value == 1.0);

  const Sample three = make_sample({0.2, 0.5, 0.9});
  const auto d3 = bounds_diagnostics(grenander_fit(three), three);
  CHECK(d3.min_on_data == doctest::Approx(5.0 / 6).epsilon(1e-14));
  CHECK(d3.max_value == doctest::Approx(5.0 / 3).epsilon(1e-14));

  const Sample two = make_sample({0.5, 0.6});
  const auto d2 = bounds_diagnostics(grenander_fit(two), two);
  CHECK(d2.min_on_data == d2.max_value);
}

TEST_CASE("samples containing zero anchor at (0,0)") {
  const Sample s = make_sample({0.0, 0.5});
  const StepDensity fit = grenander_fit(s);
  REQUIRE(fit.piece_count() == 1);
  CHECK(fit.values()[0] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(fit.integral() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(grenander_oracle(s, 0.25) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("pooling idempotence: concave ECDF reproduces its own slopes") {
  const Sample s = make_sample({0.2, 0.5, 0.9});
  const EmpiricalCdf F = empirical_cdf(s);
  const StepDensity fit = grenander_fit(s);
  REQUIRE(fit.breakpoints().size() == F.jump_points().size() + 1);
  double prev_x = 0.0;
  double prev_h = 0.0;
  for (std::size_t k = 0; k < F.jump_points().size(); ++k) {
    CHECK(fit.breakpoints()[k + 1] == F.jump_points()[k]);
    const double slope =
        (F.heights()[k] - prev_h) / (F.jump_points()[k] - prev_x);
    CHECK(fit.values()[k] == slope);  // same arithmetic, bitwise equal
    prev_x = F.jump_points()[k];
    prev_h = F.heights()[k];
  }
}

TEST_CASE("randomized suite: hull equals oracle, invariants hold") {
  rng::CounterRng gen(2024);
  int checked = 0;
  for (int rep = 0; rep < 300; ++rep) {
    const int n = 1 + static_cast<int>(gen.next_u64() % 50);
    const Sample s = testutil::random_sample(gen, n);
    const EmpiricalCdf F = empirical_cdf(s);
    const ConcaveMajorant hull = least_concave_majorant(F);
    const StepDensity fit = grenander_fit(hull);

    // normalization, exact sum of piece areas
    CHECK(std::fabs(fit.integral() - 1.0) <= 1e-12);

    // strict monotonicity across vertices
    for (std::size_t j = 1; j < fit.values().size(); ++j) {
      CHECK(fit.values()[j] < fit.values()[j - 1]);
    }

    // majorant domination at jump points (left limits at 0)
    for (std::size_t k = 0; k < F.jump_points().size(); ++k) {
      const double x = F.jump_points()[k];
      const double m = hull(x);
      if (x > 0.0) CHECK(m >= F.heights()[k] - 1e-12);
      CHECK(m >= F.left_limit(x) - 1e-12);
    }

    // oracle agreement at breakpoints and midpoints
    for (std::size_t j = 1; j < fit.breakpoints().size(); ++j) {
      const double bp = fit.breakpoints()[j];
      const double mid = 0.5 * (fit.breakpoints()[j - 1] + bp);
      CHECK(std::fabs(fit(bp) - grenander_oracle(s, bp)) <= 1e-9);
      if (mid > 0.0) {
        CHECK(std::fabs(fit(mid) - grenander_oracle(s, mid)) <= 1e-9);
      }
      ++checked;
    }
  }
  CHECK(checked > 300);
}

TEST_CASE("MLE dominance over random monotone candidates") {
  rng::CounterRng gen(77);
  for (int rep = 0; rep < 20; ++rep) {
    const int n = 2 + static_cast<int>(gen.next_u64() % 40);
    const Sample s = testutil::random_sample(gen, n);
    const StepDensity fit = grenander_fit(s);
    const double best = log_likelihood(fit, s);
    for (int c = 0; c < 50; ++c) {
      const StepDensity q = testutil::random_monotone_density(gen, s.max());
      CHECK(best >= log_likelihood(q, s) - 1e-12);
    }
  }
}

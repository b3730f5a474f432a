#include <doctest.h>

#include <cmath>

#include "grenander/errors.hpp"
#include "grenander/experiment.hpp"
#include "grenander/rng.hpp"
#include "grenander/serialization.hpp"
#include "grenander/stats.hpp"

using namespace grenander;

namespace {

ExperimentConfig base_config() {
  ExperimentConfig cfg;
  cfg.density = ReferenceDensity::linear(1.5, 1.0, 1.0);
  cfg.statistic = Statistic::L2Error;
  cfg.n_grid = {50, 100, 200};
  cfg.replications = 20;
  cfg.base_seed = 31;
  return cfg;
}

}  // namespace

TEST_CASE("identical configs produce identical results") {
  const auto a = run_experiment(base_config());
  const auto b = run_experiment(base_config());
  REQUIRE(a.series.size() == b.series.size());
  for (std::size_t s = 0; s < a.series.size(); ++s) {
    CHECK(a.series[s].values == b.series[s].values);
  }
  CHECK(result_csv_string(a) == result_csv_string(b));

  // single-replication runs are fine
  ExperimentConfig tiny = base_config();
  tiny.replications = 1;
  tiny.n_grid = {30};
  const auto c = run_experiment(tiny);
  const auto d = run_experiment(tiny);
  CHECK(c.series[0].values == d.series[0].values);
}

TEST_CASE("parallel runner is bit-identical to the serial reference") {
  for (auto stat : {Statistic::L2Error, Statistic::SupDiffCdf,
                    Statistic::ScoreSelf}) {
    ExperimentConfig cfg = base_config();
    cfg.statistic = stat;
    cfg.workers = 4;
    const auto parallel = run_experiment(cfg);
    cfg.workers = 1;
    const auto serial = run_experiment_serial(cfg);
    REQUIRE(parallel.series.size() == serial.series.size());
    for (std::size_t s = 0; s < parallel.series.size(); ++s) {
      CHECK(parallel.series[s].values == serial.series[s].values);
      for (std::size_t ni = 0; ni < parallel.n_grid.size(); ++ni) {
        CHECK(parallel.series[s].per_n[ni].median ==
              serial.series[s].per_n[ni].median);
        CHECK(parallel.series[s].per_n[ni].mean ==
              serial.series[s].per_n[ni].mean);
      }
    }
  }
}

TEST_CASE("a constant functional makes the plug-in statistic vanish") {
  ExperimentConfig cfg = base_config();
  cfg.density = ReferenceDensity::uniform(1.0);
  cfg.statistic = Statistic::PluginMinusEmpirical;
  // indicator at the support edge: f == 1 on [0,1]
  cfg.functionals = {TestFunction::indicator(1.0)};
  cfg.n_grid = {20, 40, 80};
  cfg.replications = 10;
  const auto result = run_experiment(cfg);
  for (const auto& per_n : result.series[0].values) {
    for (double v : per_n) CHECK(std::fabs(v) <= 1e-15);
  }
}

TEST_CASE("majorant dominance keeps supDiffCdf non-negative") {
  ExperimentConfig cfg = base_config();
  cfg.statistic = Statistic::SupDiffCdf;
  cfg.replications = 50;
  const auto result = run_experiment(cfg);
  for (const auto& per_n : result.series[0].values) {
    for (double v : per_n) CHECK(v >= 0.0);
  }
}

TEST_CASE("rate_slope recovers exact and noisy power laws") {
  // synthetic results: every replication equal to the median
  auto synthetic = [](const std::vector<int>& grid,
                      const std::vector<double>& medians) {
    ExperimentResult r;
    r.n_grid = grid;
    r.replications = 3;
    ExperimentSeries s;
    s.name = "synthetic";
    for (double m : medians) s.values.push_back({m, m, m});
    for (double m : medians) {
      SeriesAggregates agg;
      agg.median = m;
      s.per_n.push_back(agg);
    }
    r.series.push_back(s);
    return r;
  };

  const std::vector<int> grid = {100, 316, 1000, 3162, 10000};
  std::vector<double> exact;
  for (int n : grid) exact.push_back(2.7 * std::pow(n, -2.0 / 3.0));
  const auto slope = rate_slope(synthetic(grid, exact));
  CHECK(slope.slope == doctest::Approx(-2.0 / 3.0).epsilon(1e-12));
  CHECK(slope.stderr_ <= 1e-12);

  const auto flat = rate_slope(synthetic(grid, {3.0, 3.0, 3.0, 3.0, 3.0}));
  CHECK(flat.slope == doctest::Approx(0.0).epsilon(1e-15));

  // 1% multiplicative noise around n^{-1/3}
  rng::CounterRng gen(99);
  std::vector<double> noisy;
  for (int n : grid) {
    noisy.push_back(std::pow(n, -1.0 / 3.0) *
                    (1.0 + 0.01 * (2.0 * gen.next_unit() - 1.0)));
  }
  const auto ns = rate_slope(synthetic(grid, noisy));
  CHECK(ns.slope >= -0.36);
  CHECK(ns.slope <= -0.31);

  CHECK_THROWS_AS(rate_slope(synthetic({100, 200}, {1.0, 0.5})), InputError);
  CHECK_THROWS_AS(
      rate_slope(synthetic(grid, {1.0, 0.5, 0.0, 0.1, 0.05})), InputError);
}

TEST_CASE("ks_against_normal") {
  // values at the normal quantiles F^{-1}((i - 1/2)/R) give KS = 1/(2R)
  const int big_r = 1000;
  std::vector<double> quantiles;
  for (int i = 1; i <= big_r; ++i) {
    quantiles.push_back(
        normal_quantile((static_cast<double>(i) - 0.5) / big_r));
  }
  CHECK(ks_against_normal(quantiles, 1.0) ==
        doctest::Approx(1.0 / (2.0 * big_r)).epsilon(1e-9));

  // delta_0 cases
  CHECK(ks_against_normal({0.0, 0.0, 0.0}, 0.0) == 0.0);
  CHECK_THROWS_AS(ks_against_normal({0.0, 0.1}, 0.0), InputError);

  // seeded standard normal draws
  rng::CounterRng gen(314);
  std::vector<double> draws;
  for (int i = 0; i < 10000; ++i) {
    draws.push_back(normal_quantile(gen.next_unit()));
  }
  CHECK(ks_against_normal(draws, 1.0) < 0.02);
}

TEST_CASE("tail law exceedance at desk scale") {
  ExperimentConfig cfg;
  cfg.density = ReferenceDensity::uniform(1.0);
  cfg.statistic = Statistic::TailLaw;
  cfg.tail_thresholds = {2.0};
  cfg.n_grid = {100};
  cfg.replications = 400;
  cfg.base_seed = 404;
  const auto result = run_experiment(cfg);
  const double freq = result.series[0].per_n[0].mean;
  const double se = std::sqrt(0.5 * 0.5 / 400.0);
  CHECK(std::fabs(freq - 0.5) <= 3.0 * se);
  // the raw sup-density series tags along
  CHECK(result.series.back().name == "supDensity");
  CHECK(result.series.back().per_n[0].median > 1.0);
}

TEST_CASE("config validation") {
  ExperimentConfig cfg;
  CHECK_THROWS_AS(run_experiment(cfg), ConfigError);  // no density

  cfg = base_config();
  cfg.n_grid = {100, 100};
  CHECK_THROWS_AS(run_experiment(cfg), ConfigError);

  cfg = base_config();
  cfg.replications = 0;
  CHECK_THROWS_AS(run_experiment(cfg), ConfigError);

  cfg = base_config();
  cfg.statistic = Statistic::CltStatistic;
  CHECK_THROWS_AS(run_experiment(cfg), ConfigError);  // needs one functional

  cfg = base_config();
  cfg.statistic = Statistic::TailLaw;
  CHECK_THROWS_AS(run_experiment(cfg), ConfigError);  // needs thresholds

  cfg = base_config();
  cfg.statistic = Statistic::ConvolutionTerms;
  CHECK_THROWS_AS(run_experiment(cfg), ConfigError);  // needs density2

  cfg = base_config();
  cfg.statistic = Statistic::ConvolutionTerms;
  cfg.coupled = true;
  cfg.density2 = ReferenceDensity::uniform(1.0);
  CHECK_THROWS_AS(run_experiment(cfg), ConfigError);  // coupled + density2
}

TEST_CASE("hypothesis gating") {
  // Hoelder functional needs strict curvature
  ExperimentConfig cfg = base_config();
  cfg.density = ReferenceDensity::step_jump({0.0, 0.5, 1.0}, {1.5, 0.5});
  cfg.statistic = Statistic::CltStatistic;
  cfg.functionals = {TestFunction::hoelder("cos2pi")};
  CHECK_THROWS_AS(run_experiment(cfg), HypothesisError);

  // indicator needs a jump of p0 at t
  cfg = base_config();
  cfg.statistic = Statistic::CltStatistic;
  cfg.functionals = {TestFunction::indicator(0.25)};
  CHECK_THROWS_AS(run_experiment(cfg), HypothesisError);

  // the same indicator is admissible at the jump
  cfg.density = ReferenceDensity::step_jump({0.0, 0.25, 1.0}, {2.2, 0.6});
  cfg.n_grid = {50};
  cfg.replications = 5;
  CHECK_NOTHROW(run_experiment(cfg));

  // convolution requires strict curvature on both sides
  cfg = base_config();
  cfg.statistic = Statistic::ConvolutionTerms;
  cfg.density = ReferenceDensity::uniform(1.0);
  cfg.density2 = ReferenceDensity::linear(1.5, 1.0, 1.0);
  CHECK_THROWS_AS(run_experiment(cfg), HypothesisError);
}

TEST_CASE("coupled convolution shares the sample") {
  ExperimentConfig cfg;
  cfg.density = ReferenceDensity::linear(1.5, 1.0, 1.0);
  cfg.statistic = Statistic::ConvolutionTerms;
  cfg.coupled = true;
  cfg.n_grid = {60};
  cfg.replications = 5;
  cfg.base_seed = 11;
  const auto result = run_experiment(cfg);
  REQUIRE(result.series.size() == 4);
  // with q_hat == p_hat the two one-sided terms coincide
  for (std::size_t rep = 0; rep < 5; ++rep) {
    CHECK(result.series[1].values[0][rep] ==
          doctest::Approx(result.series[2].values[0][rep]).epsilon(1e-12));
    CHECK(result.series[0].values[0][rep] <=
          result.series[3].values[0][rep]);
  }
}

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "grenander/reference_density.hpp"
#include "grenander/stats.hpp"
#include "grenander/test_function.hpp"

namespace grenander {

// Per-replication statistics the harness can generate. Each replication
// draws a fresh sample (seeded by (baseSeed, n, replication) only), fits the
// estimator and evaluates the statistic.
enum class Statistic {
  SupDiffCdf,            // sup_t (hat F_n - F_n)(t)
  PluginMinusEmpirical,  // max over functionals of |(hat P_n - P_n)(f)|
  CltStatistic,          // sqrt(n) (int f d hat P_n - int f dP_0)
  L2Error,               // ||hat p_n - p_0||_2
  HellingerError,        // h(hat p_n, p_0)
  ScoreSelf,             // |D ell_n(hat p_n)[hat p_n - p_0]|
  TailLaw,               // indicators of hat p_n(0) > M per threshold M
  ConvolutionTerms,      // L1 norms of the convolution decomposition terms
};

Statistic statistic_from_string(const std::string& name);
std::string to_string(Statistic s);

struct ExperimentConfig {
  std::optional<ReferenceDensity> density;
  std::optional<ReferenceDensity> density2;  // convolution, independent mode
  std::vector<TestFunction> functionals;
  std::vector<int> n_grid;
  int replications = 0;
  std::uint64_t base_seed = 0;
  Statistic statistic = Statistic::SupDiffCdf;
  std::vector<double> tail_thresholds;  // tailLaw M values
  bool coupled = false;                 // convolution: X_j = Y_j
  int workers = 0;                      // 0 = all available
};

struct SeriesAggregates {
  double median = 0.0;
  double q10 = 0.0;
  double q90 = 0.0;
  double mean = 0.0;
  double variance = 0.0;
  std::optional<double> ks;  // CLT runs: KS distance to N(0, sigma_ref^2)
};

struct ExperimentSeries {
  std::string name;
  std::vector<std::vector<double>> values;  // [n_index][replication]
  std::vector<SeriesAggregates> per_n;
  std::optional<SlopeFit> slope;  // log-log fit of the medians, when defined
};

struct ExperimentResult {
  std::vector<int> n_grid;
  int replications = 0;
  std::vector<ExperimentSeries> series;  // headline series first
};

// Structural validation (ConfigError) and theorem-hypothesis gating
// (HypothesisError). Both run at the start of every experiment.
void validate_config(const ExperimentConfig& cfg);
void check_hypotheses(const ExperimentConfig& cfg);

// OpenMP-parallel runner: replications are independent tasks scheduled over
// cfg.workers threads; seeding is counter-based per (n, replication), and
// aggregation always happens in a fixed serial order, so the result is
// bit-identical for any worker count.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

// Plain-loop reference implementation with identical semantics, kept for
// testing the parallel runner and for benchmarking.
ExperimentResult run_experiment_serial(const ExperimentConfig& cfg);

// Least-squares slope of log(median) vs log(n) for the headline series.
// Throws InputError on fewer than 3 sizes or a non-positive median
// (degenerate statistic).
SlopeFit rate_slope(const ExperimentResult& result);

}  // namespace grenander

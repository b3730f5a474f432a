#include "grenander/experiment.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "grenander/convolution.hpp"
#include "grenander/errors.hpp"
#include "grenander/fit.hpp"
#include "grenander/likelihood.hpp"
#include "grenander/metrics.hpp"
#include "grenander/rng.hpp"

namespace grenander {

Statistic statistic_from_string(const std::string& name) {
  if (name == "supDiffCdf") return Statistic::SupDiffCdf;
  if (name == "pluginMinusEmpirical") return Statistic::PluginMinusEmpirical;
  if (name == "cltStatistic") return Statistic::CltStatistic;
  if (name == "l2Error") return Statistic::L2Error;
  if (name == "hellingerError") return Statistic::HellingerError;
  if (name == "scoreSelf") return Statistic::ScoreSelf;
  if (name == "tailLaw") return Statistic::TailLaw;
  if (name == "convolutionTerms") return Statistic::ConvolutionTerms;
  throw ConfigError("unknown statistic '" + name + "'");
}

std::string to_string(Statistic s) {
  switch (s) {
    case Statistic::SupDiffCdf: return "supDiffCdf";
    case Statistic::PluginMinusEmpirical: return "pluginMinusEmpirical";
    case Statistic::CltStatistic: return "cltStatistic";
    case Statistic::L2Error: return "l2Error";
    case Statistic::HellingerError: return "hellingerError";
    case Statistic::ScoreSelf: return "scoreSelf";
    case Statistic::TailLaw: return "tailLaw";
    case Statistic::ConvolutionTerms: return "convolutionTerms";
  }
  return "?";
}

void validate_config(const ExperimentConfig& cfg) {
  if (!cfg.density) throw ConfigError("config: density is required");
  if (cfg.n_grid.empty()) throw ConfigError("config: nGrid is required");
  for (std::size_t i = 0; i < cfg.n_grid.size(); ++i) {
    if (cfg.n_grid[i] < 1) throw ConfigError("config: sample sizes must be >= 1");
    if (i > 0 && cfg.n_grid[i] <= cfg.n_grid[i - 1]) {
      throw ConfigError("config: nGrid must be strictly ascending");
    }
  }
  if (cfg.replications < 1) {
    throw ConfigError("config: replications must be >= 1");
  }
  switch (cfg.statistic) {
    case Statistic::CltStatistic:
      if (cfg.functionals.size() != 1) {
        throw ConfigError("cltStatistic needs exactly one functional");
      }
      break;
    case Statistic::PluginMinusEmpirical:
      if (cfg.functionals.empty()) {
        throw ConfigError("pluginMinusEmpirical needs at least one functional");
      }
      break;
    case Statistic::TailLaw:
      if (cfg.tail_thresholds.empty()) {
        throw ConfigError("tailLaw needs at least one threshold M");
      }
      for (double m : cfg.tail_thresholds) {
        if (!(m > 0.0)) throw ConfigError("tailLaw thresholds must be positive");
      }
      break;
    case Statistic::ConvolutionTerms:
      if (cfg.coupled && cfg.density2) {
        throw ConfigError(
            "convolutionTerms: coupled mode shares one sample; density2 must "
            "be omitted");
      }
      if (!cfg.coupled && !cfg.density2) {
        throw ConfigError(
            "convolutionTerms: independent mode needs density2");
      }
      break;
    default:
      break;
  }
}

namespace {

void require_class_membership(const TestFunction& f,
                              const ReferenceDensity& d) {
  switch (f.kind()) {
    case TestFunction::Kind::Indicator:
      if (!d.jump_at(*f.indicator_t())) {
        throw HypothesisError(
            "functional " + f.describe() + " is admissible only where p0 has "
            "a discontinuity (||Df/Dp0|| = 1/Delta); " + d.describe() +
            " has no jump at t");
      }
      break;
    case TestFunction::Kind::Hoelder:
      if (!d.strict_curvature()) {
        throw HypothesisError(
            "Hoelder functionals require strict curvature of p0 "
            "(||lambda/Dp0||_inf < inf); violated by " + d.describe());
      }
      break;
    case TestFunction::Kind::Bv:
      if (!f.df_over_dp0(d)) {
        throw HypothesisError(
            "bounded-variation functional " + f.describe() +
            " has no resolvable ||Df/Dp0|| against " + d.describe());
      }
      break;
  }
}

}  // namespace

void check_hypotheses(const ExperimentConfig& cfg) {
  const auto& d = *cfg.density;
  switch (cfg.statistic) {
    case Statistic::CltStatistic:
    case Statistic::PluginMinusEmpirical:
      for (const auto& f : cfg.functionals) require_class_membership(f, d);
      break;
    case Statistic::ConvolutionTerms:
      if (!d.strict_curvature()) {
        throw HypothesisError(
            "convolutionTerms requires strict curvature of p0; violated by " +
            d.describe());
      }
      if (cfg.density2 && !cfg.density2->strict_curvature()) {
        throw HypothesisError(
            "convolutionTerms requires strict curvature of q0; violated by " +
            cfg.density2->describe());
      }
      break;
    default:
      break;
  }
}

namespace {

struct RunPlan {
  std::vector<std::string> series_names;
  double clt_reference = 0.0;  // P_0 f for the CLT statistic
  double clt_sigma = -1.0;     // limiting standard deviation, for KS
};

RunPlan make_plan(const ExperimentConfig& cfg) {
  RunPlan plan;
  switch (cfg.statistic) {
    case Statistic::TailLaw: {
      for (double m : cfg.tail_thresholds) {
        plan.series_names.push_back("tailLaw(M=" + std::to_string(m) + ")");
      }
      plan.series_names.push_back("supDensity");
      break;
    }
    case Statistic::ConvolutionTerms:
      plan.series_names = {"convCrossL1", "convTermPL1", "convTermQL1",
                           "convYoungBound"};
      break;
    case Statistic::CltStatistic: {
      plan.series_names = {to_string(cfg.statistic)};
      const auto& f = cfg.functionals.front();
      const auto& d = *cfg.density;
      if (f.kind() == TestFunction::Kind::Indicator) {
        plan.clt_reference = d.cdf(*f.indicator_t());
      } else {
        plan.clt_reference = mean_under(d, f.fn());
      }
      plan.clt_sigma = std::sqrt(std::max(0.0, limit_variance(f, d)));
      break;
    }
    default:
      plan.series_names = {to_string(cfg.statistic)};
      break;
  }
  return plan;
}

void run_one(const ExperimentConfig& cfg, const RunPlan& plan, int n, int rep,
             double* out) {
  const auto& d = *cfg.density;
  const std::uint64_t key =
      rng::stream_key(cfg.base_seed, static_cast<std::uint64_t>(n),
                      static_cast<std::uint64_t>(rep));

  if (cfg.statistic == Statistic::ConvolutionTerms) {
    const Sample sx = d.sample_iid(n, rng::substream(key, 0));
    const StepDensity p_hat = grenander_fit(sx);
    const ReferenceDensity& d2 = cfg.coupled ? d : *cfg.density2;
    const StepDensity q_hat =
        cfg.coupled ? p_hat
                    : grenander_fit(d2.sample_iid(n, rng::substream(key, 1)));
    const DecompositionTerms terms = decomposition_terms(p_hat, q_hat, d, d2);
    out[0] = terms.cross_l1;
    out[1] = terms.term_p_l1;
    out[2] = terms.term_q_l1;
    out[3] = terms.young_bound;
    return;
  }

  const Sample s = d.sample_iid(n, key);
  switch (cfg.statistic) {
    case Statistic::SupDiffCdf: {
      const EmpiricalCdf F = empirical_cdf(s);
      out[0] = sup_diff_cdf(least_concave_majorant(F), F);
      return;
    }
    case Statistic::PluginMinusEmpirical: {
      const StepDensity fit = grenander_fit(s);
      double worst = 0.0;
      for (const auto& f : cfg.functionals) {
        worst = std::max(worst, std::fabs(plugin_minus_empirical(fit, s, f)));
      }
      out[0] = worst;
      return;
    }
    case Statistic::CltStatistic: {
      const StepDensity fit = grenander_fit(s);
      const auto& f = cfg.functionals.front();
      double fitted;
      if (f.kind() == TestFunction::Kind::Indicator) {
        fitted = fit.cdf(*f.indicator_t());
      } else {
        const EvaluableFunction density = as_function(fit);
        fitted = integrate_aligned(
            fit.support_end(), {&f.fn(), &density},
            [&](double x) { return f(x) * fit(x); }, likelihood_quadrature());
      }
      out[0] = std::sqrt(static_cast<double>(n)) *
               (fitted - plan.clt_reference);
      return;
    }
    case Statistic::L2Error:
      out[0] = l2_distance(grenander_fit(s), d);
      return;
    case Statistic::HellingerError:
      out[0] = hellinger(grenander_fit(s), d);
      return;
    case Statistic::ScoreSelf: {
      const StepDensity fit = grenander_fit(s);
      out[0] = std::fabs(score_self(fit, s, d));
      return;
    }
    case Statistic::TailLaw: {
      const StepDensity fit = grenander_fit(s);
      const double sup = fit.values().front();  // hat p_n(0)
      for (std::size_t m = 0; m < cfg.tail_thresholds.size(); ++m) {
        out[m] = sup > cfg.tail_thresholds[m] ? 1.0 : 0.0;
      }
      out[cfg.tail_thresholds.size()] = sup;
      return;
    }
    default:
      throw InternalError("run_one: unhandled statistic");
  }
}

ExperimentResult run_common(const ExperimentConfig& cfg, bool parallel) {
  validate_config(cfg);
  check_hypotheses(cfg);
  const RunPlan plan = make_plan(cfg);

  const auto n_sizes = cfg.n_grid.size();
  const auto reps = static_cast<std::size_t>(cfg.replications);
  const auto n_series = plan.series_names.size();
  const auto tasks = static_cast<long long>(n_sizes * reps);

  // one slot per (n, replication, series); tasks write disjoint slots
  std::vector<double> buffer(n_sizes * reps * n_series, 0.0);
  std::string failure;

  if (parallel) {
#ifdef _OPENMP
    const int threads =
        cfg.workers > 0 ? cfg.workers : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (long long task = 0; task < tasks; ++task) {
      const auto ni = static_cast<std::size_t>(task) / reps;
      const auto rep = static_cast<std::size_t>(task) % reps;
      try {
        run_one(cfg, plan, cfg.n_grid[ni], static_cast<int>(rep),
                &buffer[(ni * reps + rep) * n_series]);
      } catch (const std::exception& e) {
#pragma omp critical
        if (failure.empty()) failure = e.what();
      }
    }
#else
    parallel = false;
#endif
  }
  if (!parallel) {
    for (long long task = 0; task < tasks; ++task) {
      const auto ni = static_cast<std::size_t>(task) / reps;
      const auto rep = static_cast<std::size_t>(task) % reps;
      run_one(cfg, plan, cfg.n_grid[ni], static_cast<int>(rep),
              &buffer[(ni * reps + rep) * n_series]);
    }
  }
  if (!failure.empty()) {
    throw InternalError("run_experiment: replication failed: " + failure);
  }

  // deterministic aggregation, independent of how the buffer was filled
  ExperimentResult result;
  result.n_grid = cfg.n_grid;
  result.replications = cfg.replications;
  result.series.resize(n_series);
  for (std::size_t si = 0; si < n_series; ++si) {
    auto& series = result.series[si];
    series.name = plan.series_names[si];
    series.values.assign(n_sizes, std::vector<double>(reps, 0.0));
    series.per_n.resize(n_sizes);
    for (std::size_t ni = 0; ni < n_sizes; ++ni) {
      auto& vals = series.values[ni];
      for (std::size_t rep = 0; rep < reps; ++rep) {
        vals[rep] = buffer[(ni * reps + rep) * n_series + si];
      }
      auto& agg = series.per_n[ni];
      agg.median = quantile_of(vals, 0.5);
      agg.q10 = quantile_of(vals, 0.1);
      agg.q90 = quantile_of(vals, 0.9);
      agg.mean = mean_of(vals);
      agg.variance = variance_of(vals);
      if (cfg.statistic == Statistic::CltStatistic && plan.clt_sigma >= 0.0) {
        if (plan.clt_sigma > 0.0) {
          agg.ks = ks_against_normal(vals, plan.clt_sigma);
        } else if (std::all_of(vals.begin(), vals.end(),
                               [](double v) { return v == 0.0; })) {
          agg.ks = 0.0;  // the delta_0 limit
        }
      }
    }
    if (n_sizes >= 3) {
      bool positive = true;
      std::vector<double> lx, ly;
      for (std::size_t ni = 0; ni < n_sizes; ++ni) {
        if (!(series.per_n[ni].median > 0.0)) {
          positive = false;
          break;
        }
        lx.push_back(std::log(static_cast<double>(cfg.n_grid[ni])));
        ly.push_back(std::log(series.per_n[ni].median));
      }
      if (positive) series.slope = least_squares_slope(lx, ly);
    }
  }
  return result;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  return run_common(cfg, true);
}

ExperimentResult run_experiment_serial(const ExperimentConfig& cfg) {
  return run_common(cfg, false);
}

SlopeFit rate_slope(const ExperimentResult& result) {
  if (result.series.empty()) {
    throw InputError("rate_slope: empty result");
  }
  const auto& series = result.series.front();
  if (result.n_grid.size() < 3) {
    throw InputError("rate_slope: need at least 3 sample sizes");
  }
  std::vector<double> lx, ly;
  for (std::size_t ni = 0; ni < result.n_grid.size(); ++ni) {
    const double med = series.per_n[ni].median;
    if (!(med > 0.0)) {
      throw InputError(
          "rate_slope: degenerate statistic (non-positive median at n = " +
          std::to_string(result.n_grid[ni]) + ")");
    }
    lx.push_back(std::log(static_cast<double>(result.n_grid[ni])));
    ly.push_back(std::log(med));
  }
  return least_squares_slope(lx, ly);
}

}  // namespace grenander

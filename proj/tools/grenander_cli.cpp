// Command-line front end: fit, simulate, rates, convolve and diagnostics
// subcommands. All numeric work lives in the library; this file only wires
// files, flags and exit codes:
//   0 success, 2 input error, 3 configuration/hypothesis error,
//   4 internal invariant failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "grenander/convolution.hpp"
#include "grenander/errors.hpp"
#include "grenander/experiment.hpp"
#include "grenander/fit.hpp"
#include "grenander/likelihood.hpp"
#include "grenander/metrics.hpp"
#include "grenander/serialization.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitConfig = 3;
constexpr int kExitInternal = 4;

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) {
    throw grenander::InputError("cannot write output file '" + path + "'");
  }
  out << text;
}

void write_json_file(const std::string& path, const json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

struct SimulateOptions {
  std::string config_path;
  std::string output_base = "experiment";
  std::string format = "both";  // csv | json | both
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  std::optional<int> replications;
  std::vector<int> n_grid;
  std::optional<std::string> statistic;
  std::optional<std::string> density_json;
  std::optional<std::string> functional_json;
  bool require_slope = false;  // the rates subcommand
};

void apply_overrides(grenander::ExperimentConfig& cfg,
                     const SimulateOptions& opt) {
  if (opt.seed) cfg.base_seed = *opt.seed;
  if (opt.workers) cfg.workers = *opt.workers;
  if (opt.replications) cfg.replications = *opt.replications;
  if (!opt.n_grid.empty()) cfg.n_grid = opt.n_grid;
  if (opt.statistic) {
    cfg.statistic = grenander::statistic_from_string(*opt.statistic);
  }
  if (opt.density_json) {
    cfg.density = grenander::density_from_json(json::parse(*opt.density_json));
  }
  if (opt.functional_json) {
    cfg.functionals = {
        grenander::functional_from_json(json::parse(*opt.functional_json))};
  }
}

// Optional acceptance bands from the config file:
//   "acceptance": {"slopeBand":[lo,hi], "ksMax":x}
struct AcceptanceBands {
  std::optional<std::pair<double, double>> slope_band;
  std::optional<double> ks_max;
};

AcceptanceBands read_bands(const std::string& config_path) {
  AcceptanceBands bands;
  std::ifstream in(config_path);
  if (!in) return bands;
  std::stringstream buf;
  buf << in.rdbuf();
  json j;
  try {
    const bool is_toml = config_path.size() > 5 &&
                         config_path.compare(config_path.size() - 5, 5,
                                             ".toml") == 0;
    j = is_toml ? grenander::toml_to_json(buf.str()) : json::parse(buf.str());
  } catch (...) {
    return bands;
  }
  if (!j.contains("acceptance")) return bands;
  const auto& a = j.at("acceptance");
  if (a.contains("slopeBand")) {
    const auto band = a.at("slopeBand").get<std::vector<double>>();
    if (band.size() == 2) bands.slope_band = {band[0], band[1]};
  }
  if (a.contains("ksMax")) bands.ks_max = a.at("ksMax").get<double>();
  return bands;
}

int cmd_fit(const std::string& input, const std::string& output) {
  const auto raw = grenander::read_sample_file(input);
  const auto sample = grenander::make_sample(raw);
  const auto fit = grenander::grenander_fit(sample);
  write_json_file(output, grenander::step_density_to_json(fit));
  const auto bounds = grenander::bounds_diagnostics(fit, sample);
  std::cout << "fit: n=" << sample.size() << " pieces=" << fit.piece_count()
            << " p(0)=" << bounds.max_value
            << " p(Xn)=" << bounds.min_on_data
            << " loglik=" << grenander::log_likelihood(fit, sample) << " -> "
            << output << "\n";
  return kExitOk;
}

int cmd_simulate(const SimulateOptions& opt) {
  grenander::ExperimentConfig cfg =
      grenander::load_config_file(opt.config_path);
  apply_overrides(cfg, opt);
  const AcceptanceBands bands = read_bands(opt.config_path);

  if (opt.require_slope || bands.slope_band) {
    if (cfg.n_grid.size() < 3) {
      throw grenander::ConfigError(
          "rate experiments need at least 3 sample sizes in nGrid");
    }
    if (cfg.replications < 200) {
      throw grenander::ConfigError(
          "rate experiments need at least 200 replications");
    }
  }

  const auto result = grenander::run_experiment(cfg);

  if (opt.format == "csv" || opt.format == "both") {
    grenander::write_result_csv(result, opt.output_base + ".csv");
  }
  if (opt.format == "json" || opt.format == "both") {
    write_json_file(opt.output_base + ".summary.json",
                    grenander::result_summary_json(result));
  }

  const auto& primary = result.series.front();
  std::cout << "simulate: statistic=" << primary.name
            << " sizes=" << cfg.n_grid.size()
            << " replications=" << cfg.replications << " -> "
            << opt.output_base << ".{csv,summary.json}\n";

  if (opt.require_slope || bands.slope_band) {
    const auto slope = grenander::rate_slope(result);
    std::cout << "slope: " << slope.slope << " (stderr " << slope.stderr_
              << ")";
    if (bands.slope_band) {
      const bool pass = slope.slope >= bands.slope_band->first &&
                        slope.slope <= bands.slope_band->second;
      std::cout << " band [" << bands.slope_band->first << ", "
                << bands.slope_band->second << "] -> "
                << (pass ? "PASS" : "FAIL");
    }
    std::cout << "\n";
  }
  if (bands.ks_max) {
    const auto& agg = primary.per_n.back();
    if (agg.ks) {
      const bool pass = *agg.ks <= *bands.ks_max;
      std::cout << "ks(n=" << result.n_grid.back() << "): " << *agg.ks
                << " max " << *bands.ks_max << " -> "
                << (pass ? "PASS" : "FAIL") << "\n";
    } else {
      std::cout << "ks: not defined for this statistic\n";
    }
  }
  return kExitOk;
}

int cmd_convolve(const std::string& input1, const std::string& input2,
                 const std::string& output) {
  auto load = [](const std::string& path) {
    std::ifstream in(path);
    if (!in) {
      throw grenander::InputError("cannot open fit file '" + path + "'");
    }
    json j;
    try {
      in >> j;
    } catch (const json::parse_error& e) {
      throw grenander::InputError("fit file '" + path + "': " + e.what());
    }
    return grenander::step_density_from_json(j);
  };
  const auto p = load(input1);
  const auto q = load(input2);
  const auto conv = grenander::convolve_steps(p, q);
  write_json_file(output, grenander::piecewise_linear_to_json(conv));
  std::cout << "convolve: knots=" << conv.knots.size()
            << " support=[0, " << conv.support_end()
            << "] mass=" << conv.integral() << " -> " << output << "\n";
  return kExitOk;
}

int cmd_diagnostics(const std::string& input, const std::string& output) {
  const auto raw = grenander::read_sample_file(input);
  const auto sample = grenander::make_sample(raw);
  const auto ecdf = grenander::empirical_cdf(sample);
  const auto hull = grenander::least_concave_majorant(ecdf);
  const auto fit = grenander::grenander_fit(hull);
  const auto bounds = grenander::bounds_diagnostics(fit, sample);
  json report{{"n", sample.size()},
              {"pieces", fit.piece_count()},
              {"minOnData", bounds.min_on_data},
              {"maxValue", bounds.max_value},
              {"logLikelihood", grenander::log_likelihood(fit, sample)},
              {"supDiffCdf", grenander::sup_diff_cdf(hull, ecdf)},
              {"integralError", fit.integral() - 1.0}};
  write_json_file(output, report);
  std::cout << "diagnostics: n=" << sample.size()
            << " pieces=" << fit.piece_count() << " -> " << output << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grenander estimator: exact fits and Monte Carlo experiments"};
  app.require_subcommand(1);

  std::string fit_input, fit_output = "fit.json";
  auto* fit = app.add_subcommand("fit", "fit a sample file");
  fit->add_option("--input", fit_input, "sample file, one number per line")
      ->required();
  fit->add_option("--output", fit_output, "output fit JSON");

  SimulateOptions sim;
  auto add_sim_flags = [&](CLI::App* cmd) {
    cmd->add_option("--config", sim.config_path, "JSON or TOML config file")
        ->required();
    cmd->add_option("--output", sim.output_base,
                    "output base path (.csv / .summary.json)");
    cmd->add_option("--format", sim.format, "csv | json | both")
        ->check(CLI::IsMember({"csv", "json", "both"}));
    cmd->add_option("--seed", sim.seed, "override baseSeed");
    cmd->add_option("--workers", sim.workers, "override worker count");
    cmd->add_option("--replications", sim.replications,
                    "override replication count");
    cmd->add_option("--n-grid", sim.n_grid, "override sample sizes")
        ->delimiter(',');
    cmd->add_option("--statistic", sim.statistic, "override statistic");
    cmd->add_option("--density", sim.density_json,
                    "override density (inline JSON)");
    cmd->add_option("--functional", sim.functional_json,
                    "override functional (inline JSON)");
  };
  auto* simulate =
      app.add_subcommand("simulate", "run a Monte Carlo experiment");
  add_sim_flags(simulate);
  auto* rates = app.add_subcommand(
      "rates", "run a rate experiment and report the log-log slope");
  add_sim_flags(rates);

  std::string conv_input1, conv_input2, conv_output = "convolution.json";
  auto* convolve =
      app.add_subcommand("convolve", "convolve two fitted step densities");
  convolve->add_option("--input", conv_input1, "first fit JSON")->required();
  convolve->add_option("--input2", conv_input2, "second fit JSON")->required();
  convolve->add_option("--output", conv_output, "output JSON");

  std::string diag_input, diag_output = "diagnostics.json";
  auto* diagnostics =
      app.add_subcommand("diagnostics", "fit diagnostics for a sample file");
  diagnostics->add_option("--input", diag_input, "sample file")->required();
  diagnostics->add_option("--output", diag_output, "output report JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (fit->parsed()) return cmd_fit(fit_input, fit_output);
    if (simulate->parsed()) return cmd_simulate(sim);
    if (rates->parsed()) {
      sim.require_slope = true;
      return cmd_simulate(sim);
    }
    if (convolve->parsed()) {
      return cmd_convolve(conv_input1, conv_input2, conv_output);
    }
    if (diagnostics->parsed()) return cmd_diagnostics(diag_input, diag_output);
  } catch (const grenander::HypothesisError& e) {
    std::cerr << "hypothesis error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const grenander::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const grenander::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const grenander::InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitOk;
}

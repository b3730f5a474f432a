#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "grenander/experiment.hpp"
#include "grenander/piecewise.hpp"
#include "grenander/reference_density.hpp"
#include "grenander/step_density.hpp"
#include "grenander/test_function.hpp"

namespace grenander {

// Fit serialization: {"breakpoints":[t0,...,tm], "values":[v1,...,vm]},
// t0 = 0.
nlohmann::json step_density_to_json(const StepDensity& p);
StepDensity step_density_from_json(const nlohmann::json& j);

// {"knots":[...], "values":[...]}
nlohmann::json piecewise_linear_to_json(const PiecewiseLinearFn& f);
PiecewiseLinearFn piecewise_linear_from_json(const nlohmann::json& j);

// Density specs:
//   {"family":"uniform","alpha1":1.0}
//   {"family":"linear","a":1.5,"b":1.0,"alpha1":1.0}
//   {"family":"stepJump","edges":[0,0.5,1.0],"heights":[1.5,0.5]}
//   {"family":"truncExp","rate":2.0,"alpha1":1.0}
ReferenceDensity density_from_json(const nlohmann::json& j);
nlohmann::json density_to_json(const ReferenceDensity& d);

// Functional specs:
//   {"kind":"indicator","t":0.5}
//   {"kind":"hoelder","name":"cos2pi"}   (cos2pi | absPower06 | identity)
//   {"kind":"bv","name":"identity"}
TestFunction functional_from_json(const nlohmann::json& j);
nlohmann::json functional_to_json(const TestFunction& f);

// Experiment config (shared schema between JSON and TOML):
//   statistic, density, [density2], [functionals], nGrid, replications,
//   baseSeed, [tailThresholds], [coupled], [workers]
ExperimentConfig config_from_json(const nlohmann::json& j);

// Minimal TOML reader covering the config schema: top-level key = value,
// [table] headers, [[array-of-tables]] headers, strings, numbers, booleans
// and flat arrays. Returns the equivalent JSON document.
nlohmann::json toml_to_json(const std::string& text);

// Reads a config file, dispatching on extension (.toml vs JSON default).
ExperimentConfig load_config_file(const std::string& path);

// Sample input: one decimal number per line, '#' comments and blank lines
// ignored. Parse errors name the line number.
std::vector<double> read_sample_file(const std::string& path);

// CSV with columns statistic,n,replication,value.
void write_result_csv(const ExperimentResult& result, const std::string& path);
std::string result_csv_string(const ExperimentResult& result);

// JSON summary: aggregates per n, slope and stderr per series.
nlohmann::json result_summary_json(const ExperimentResult& result);

}  // namespace grenander

#include "grenander/serialization.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "grenander/errors.hpp"

namespace grenander {

using nlohmann::json;

namespace {

json require(const json& j, const char* key, const char* what) {
  if (!j.contains(key)) {
    throw InputError(std::string(what) + ": missing field '" + key + "'");
  }
  return j.at(key);
}

// shortest round-trip representation keeps CSV/JSON output byte-stable
std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

json step_density_to_json(const StepDensity& p) {
  return json{{"breakpoints", p.breakpoints()}, {"values", p.values()}};
}

StepDensity step_density_from_json(const json& j) {
  return StepDensity(
      require(j, "breakpoints", "step density").get<std::vector<double>>(),
      require(j, "values", "step density").get<std::vector<double>>());
}

json piecewise_linear_to_json(const PiecewiseLinearFn& f) {
  return json{{"knots", f.knots}, {"values", f.values}};
}

PiecewiseLinearFn piecewise_linear_from_json(const json& j) {
  PiecewiseLinearFn f;
  f.knots = require(j, "knots", "piecewise linear").get<std::vector<double>>();
  f.values =
      require(j, "values", "piecewise linear").get<std::vector<double>>();
  if (f.knots.size() != f.values.size() || f.knots.size() < 2) {
    throw InputError("piecewise linear: knots and values must match");
  }
  return f;
}

ReferenceDensity density_from_json(const json& j) {
  const std::string family = require(j, "family", "density").get<std::string>();
  if (family == "uniform") {
    return ReferenceDensity::uniform(
        require(j, "alpha1", "uniform density").get<double>());
  }
  if (family == "linear") {
    return ReferenceDensity::linear(
        require(j, "a", "linear density").get<double>(),
        require(j, "b", "linear density").get<double>(),
        require(j, "alpha1", "linear density").get<double>());
  }
  if (family == "stepJump") {
    return ReferenceDensity::step_jump(
        require(j, "edges", "stepJump density").get<std::vector<double>>(),
        require(j, "heights", "stepJump density").get<std::vector<double>>());
  }
  if (family == "truncExp") {
    return ReferenceDensity::trunc_exp(
        require(j, "rate", "truncExp density").get<double>(),
        require(j, "alpha1", "truncExp density").get<double>());
  }
  throw ConfigError("density: unknown family '" + family + "'");
}

json density_to_json(const ReferenceDensity& d) {
  switch (d.family()) {
    case ReferenceDensity::Family::Uniform:
      return json{{"family", "uniform"}, {"alpha1", d.support_end()}};
    case ReferenceDensity::Family::Linear:
      return json{{"family", "linear"},
                  {"a", d.param_a()},
                  {"b", d.param_b()},
                  {"alpha1", d.support_end()}};
    case ReferenceDensity::Family::StepJump:
      return json{{"family", "stepJump"},
                  {"edges", d.step_edges()},
                  {"heights", d.step_heights()}};
    case ReferenceDensity::Family::TruncExp:
      return json{{"family", "truncExp"},
                  {"rate", d.param_rate()},
                  {"alpha1", d.support_end()}};
  }
  throw ConfigError("density: unknown family");
}

TestFunction functional_from_json(const json& j) {
  const std::string kind = require(j, "kind", "functional").get<std::string>();
  if (kind == "indicator") {
    return TestFunction::indicator(
        require(j, "t", "indicator functional").get<double>());
  }
  if (kind == "hoelder") {
    return TestFunction::hoelder(
        require(j, "name", "hoelder functional").get<std::string>());
  }
  if (kind == "bv") {
    return TestFunction::bv(
        require(j, "name", "bv functional").get<std::string>());
  }
  throw ConfigError("functional: unknown kind '" + kind + "'");
}

json functional_to_json(const TestFunction& f) {
  switch (f.kind()) {
    case TestFunction::Kind::Indicator:
      return json{{"kind", "indicator"}, {"t", *f.indicator_t()}};
    case TestFunction::Kind::Hoelder:
      return json{{"kind", "hoelder"}, {"name", f.name()}};
    case TestFunction::Kind::Bv:
      return json{{"kind", "bv"}, {"name", f.name()}};
  }
  throw ConfigError("functional: unknown kind");
}

ExperimentConfig config_from_json(const json& j) {
  ExperimentConfig cfg;
  cfg.statistic = statistic_from_string(
      require(j, "statistic", "config").get<std::string>());
  cfg.density = density_from_json(require(j, "density", "config"));
  if (j.contains("density2")) {
    cfg.density2 = density_from_json(j.at("density2"));
  }
  if (j.contains("functionals")) {
    for (const auto& fj : j.at("functionals")) {
      cfg.functionals.push_back(functional_from_json(fj));
    }
  } else if (j.contains("functional")) {
    cfg.functionals.push_back(functional_from_json(j.at("functional")));
  }
  if (j.contains("nGrid")) {
    cfg.n_grid = j.at("nGrid").get<std::vector<int>>();
  } else {
    cfg.n_grid = {100, 316, 1000, 3162, 10000};  // half decades
  }
  cfg.replications = require(j, "replications", "config").get<int>();
  cfg.base_seed = j.value("baseSeed", std::uint64_t{0});
  if (j.contains("tailThresholds")) {
    cfg.tail_thresholds = j.at("tailThresholds").get<std::vector<double>>();
  }
  cfg.coupled = j.value("coupled", false);
  cfg.workers = j.value("workers", 0);
  return cfg;
}

namespace {

// --- minimal TOML subset -------------------------------------------------

struct TomlParser {
  std::istringstream in;
  int line_no = 0;

  explicit TomlParser(const std::string& text) : in(text) {}

  [[noreturn]] void fail(const std::string& msg) const {
    throw InputError("toml: line " + std::to_string(line_no) + ": " + msg);
  }

  static std::string trim(const std::string& s) {
    std::size_t a = 0;
    std::size_t b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
  }

  static std::string strip_comment(const std::string& s) {
    bool in_string = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] == '"') in_string = !in_string;
      if (s[i] == '#' && !in_string) return s.substr(0, i);
    }
    return s;
  }

  json parse_scalar(const std::string& raw) {
    const std::string tok = trim(raw);
    if (tok.empty()) fail("empty value");
    if (tok.front() == '"') {
      if (tok.size() < 2 || tok.back() != '"') fail("unterminated string");
      return json(tok.substr(1, tok.size() - 2));
    }
    if (tok == "true") return json(true);
    if (tok == "false") return json(false);
    try {
      std::size_t used = 0;
      if (tok.find_first_of(".eE") == std::string::npos) {
        const long long v = std::stoll(tok, &used);
        if (used == tok.size()) return json(v);
      }
      const double v = std::stod(tok, &used);
      if (used == tok.size()) return json(v);
    } catch (...) {
    }
    fail("cannot parse value '" + tok + "'");
  }

  json parse_value(const std::string& raw) {
    const std::string tok = trim(raw);
    if (!tok.empty() && tok.front() == '[') {
      if (tok.back() != ']') fail("unterminated array");
      json arr = json::array();
      std::string body = tok.substr(1, tok.size() - 2);
      std::string item;
      bool in_string = false;
      for (char ch : body) {
        if (ch == '"') in_string = !in_string;
        if (ch == ',' && !in_string) {
          if (!trim(item).empty()) arr.push_back(parse_scalar(item));
          item.clear();
        } else {
          item.push_back(ch);
        }
      }
      if (!trim(item).empty()) arr.push_back(parse_scalar(item));
      return arr;
    }
    return parse_scalar(tok);
  }

  json parse() {
    json root = json::object();
    json* target = &root;
    std::string line;
    while (std::getline(in, line)) {
      ++line_no;
      line = trim(strip_comment(line));
      if (line.empty()) continue;
      if (line.front() == '[') {
        const bool array_table = line.rfind("[[", 0) == 0;
        const std::size_t close = line.find(array_table ? "]]" : "]");
        if (close == std::string::npos) fail("unterminated table header");
        const std::string name =
            trim(line.substr(array_table ? 2 : 1,
                             close - (array_table ? 2 : 1)));
        if (name.empty()) fail("empty table name");
        if (array_table) {
          root[name].push_back(json::object());
          target = &root[name].back();
        } else {
          root[name] = json::object();
          target = &root[name];
        }
        continue;
      }
      const std::size_t eq = line.find('=');
      if (eq == std::string::npos) fail("expected key = value");
      const std::string key = trim(line.substr(0, eq));
      if (key.empty()) fail("empty key");
      (*target)[key] = parse_value(line.substr(eq + 1));
    }
    return root;
  }
};

}  // namespace

json toml_to_json(const std::string& text) { return TomlParser(text).parse(); }

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const bool is_toml =
      path.size() > 5 && path.compare(path.size() - 5, 5, ".toml") == 0;
  json j;
  if (is_toml) {
    j = toml_to_json(text);
  } else {
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      throw InputError("config '" + path + "': " + e.what());
    }
  }
  return config_from_json(j);
}

std::vector<double> read_sample_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open sample file '" + path + "'");
  std::vector<double> values;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string tok = TomlParser::trim(line);
    if (tok.empty() || tok.front() == '#') continue;
    try {
      std::size_t used = 0;
      const double v = std::stod(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      values.push_back(v);
    } catch (...) {
      throw InputError("sample file '" + path + "': line " +
                       std::to_string(line_no) + ": cannot parse '" + tok +
                       "'");
    }
  }
  return values;
}

std::string result_csv_string(const ExperimentResult& result) {
  std::ostringstream os;
  os << "statistic,n,replication,value\n";
  for (const auto& series : result.series) {
    for (std::size_t ni = 0; ni < result.n_grid.size(); ++ni) {
      for (std::size_t rep = 0; rep < series.values[ni].size(); ++rep) {
        os << series.name << ',' << result.n_grid[ni] << ',' << rep << ','
           << format_double(series.values[ni][rep]) << '\n';
      }
    }
  }
  return os.str();
}

void write_result_csv(const ExperimentResult& result,
                      const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write CSV file '" + path + "'");
  out << result_csv_string(result);
}

json result_summary_json(const ExperimentResult& result) {
  json series_obj = json::object();
  for (const auto& series : result.series) {
    json per_n = json::array();
    for (std::size_t ni = 0; ni < result.n_grid.size(); ++ni) {
      const auto& agg = series.per_n[ni];
      json entry{{"n", result.n_grid[ni]},   {"median", agg.median},
                 {"q10", agg.q10},           {"q90", agg.q90},
                 {"mean", agg.mean},         {"variance", agg.variance}};
      if (agg.ks) entry["ks"] = *agg.ks;
      per_n.push_back(entry);
    }
    json s{{"perN", per_n}};
    if (series.slope) {
      s["slope"] = series.slope->slope;
      s["slopeStderr"] = series.slope->stderr_;
    }
    series_obj[series.name] = s;
  }
  return json{{"nGrid", result.n_grid},
              {"replications", result.replications},
              {"series", series_obj}};
}

}  // namespace grenander

#include "avf/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>

namespace avf {
namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double parse_real(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config: '" + key + "' wants a number, got '" + value + "'");
  }
}

long parse_count(const std::string& key, const std::string& value) {
  double v = parse_real(key, value);
  double r = std::round(v);
  if (std::fabs(v - r) > 1e-9 * std::max(1.0, std::fabs(v)))
    throw ConfigError("config: '" + key + "' wants an integer, got '" + value + "'");
  return long(r);
}

bool parse_flag(const std::string& key, const std::string& value) {
  if (value == "1" || value == "true" || value == "on") return true;
  if (value == "0" || value == "false" || value == "off") return false;
  throw ConfigError("config: '" + key + "' wants a boolean, got '" + value + "'");
}

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string_view run_scheme_name(RunScheme s) {
  switch (s) {
    case RunScheme::Avf: return "avf";
    case RunScheme::Midpoint: return "midpoint";
    case RunScheme::BackwardEuler: return "backward_euler";
    case RunScheme::Reference: return "reference";
  }
  return "?";
}

RunScheme run_scheme_from_name(std::string_view name) {
  if (name == "avf") return RunScheme::Avf;
  if (name == "midpoint") return RunScheme::Midpoint;
  if (name == "backward_euler") return RunScheme::BackwardEuler;
  if (name == "reference") return RunScheme::Reference;
  throw ConfigError("config: unknown scheme '" + std::string(name) +
                    "' (avf, midpoint, backward_euler, reference)");
}

void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "problem.name") {
    cfg.problem = value;
  } else if (key.rfind("problem.", 0) == 0) {
    std::string sub = key.substr(8);
    if (sub.empty()) throw ConfigError("config: empty problem parameter name");
    cfg.params[sub] = parse_real(key, value);
  } else if (key == "scheme") {
    cfg.scheme = run_scheme_from_name(value);
  } else if (key == "dt") {
    cfg.dt = parse_real(key, value);
  } else if (key == "steps") {
    cfg.steps = parse_count(key, value);
  } else if (key == "record_every") {
    cfg.record_every = parse_count(key, value);
  } else if (key == "solver.method") {
    if (value == "newton") cfg.solver.method = SolveMethod::Newton;
    else if (value == "fixed_point") cfg.solver.method = SolveMethod::FixedPoint;
    else throw ConfigError("config: solver.method is 'newton' or 'fixed_point', got '" + value + "'");
  } else if (key == "solver.tol") {
    cfg.solver.tol = parse_real(key, value);
  } else if (key == "solver.max_iter") {
    cfg.solver.max_iter = int(parse_count(key, value));
  } else if (key == "reference.rtol") {
    cfg.reference.rtol = parse_real(key, value);
  } else if (key == "reference.atol") {
    cfg.reference.atol = parse_real(key, value);
  } else if (key == "reference.max_steps") {
    cfg.reference.max_steps = parse_count(key, value);
  } else if (key == "seed") {
    long s = parse_count(key, value);
    if (s < 0) throw ConfigError("config: seed must be >= 0");
    cfg.seed = std::uint64_t(s);
  } else if (key == "out_dir") {
    cfg.out_dir = value;
  } else if (key == "emit.csv") {
    cfg.emit.csv = parse_flag(key, value);
  } else if (key == "emit.svg") {
    cfg.emit.svg = parse_flag(key, value);
  } else if (key == "emit.snapshot_every") {
    cfg.emit.snapshot_every = parse_count(key, value);
  } else {
    throw ConfigError("config: unknown key '" + key + "'");
  }
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  ExperimentConfig cfg;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config: " + path + ":" + std::to_string(lineno) +
                        ": expected key=value, got '" + line + "'");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("config: " + path + ":" + std::to_string(lineno) + ": empty key");
    apply_setting(cfg, key, value);
  }
  return cfg;
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.problem.empty()) throw ConfigError("config: problem.name is required");
  if (!find_problem(cfg.problem)) throw ConfigError("config: unknown problem '" + cfg.problem + "'");
  if (!(cfg.dt > 0.0)) throw ConfigError("config: dt must be > 0");
  if (cfg.steps < 1) throw ConfigError("config: steps must be >= 1");
  if (cfg.record_every < 1) throw ConfigError("config: record_every must be >= 1");
  if (!(cfg.solver.tol > 0.0)) throw ConfigError("config: solver.tol must be > 0");
  if (cfg.solver.max_iter < 1) throw ConfigError("config: solver.max_iter must be >= 1");
  if (cfg.emit.snapshot_every < 0) throw ConfigError("config: emit.snapshot_every must be >= 0");
  if (!(cfg.reference.rtol > 0.0) || !(cfg.reference.atol > 0.0))
    throw ConfigError("config: reference tolerances must be > 0");
}

std::vector<std::pair<std::string, std::string>> config_entries(const ExperimentConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> out;
  out.emplace_back("problem.name", cfg.problem);
  for (const auto& [k, v] : cfg.params) out.emplace_back("problem." + k, format_real(v));
  out.emplace_back("scheme", std::string(run_scheme_name(cfg.scheme)));
  out.emplace_back("dt", format_real(cfg.dt));
  out.emplace_back("steps", std::to_string(cfg.steps));
  out.emplace_back("record_every", std::to_string(cfg.record_every));
  out.emplace_back("solver.method",
                   cfg.solver.method == SolveMethod::Newton ? "newton" : "fixed_point");
  out.emplace_back("solver.tol", format_real(cfg.solver.tol));
  out.emplace_back("solver.max_iter", std::to_string(cfg.solver.max_iter));
  if (cfg.scheme == RunScheme::Reference) {
    out.emplace_back("reference.rtol", format_real(cfg.reference.rtol));
    out.emplace_back("reference.atol", format_real(cfg.reference.atol));
    out.emplace_back("reference.max_steps", std::to_string(cfg.reference.max_steps));
  }
  out.emplace_back("seed", std::to_string(cfg.seed));
  out.emplace_back("out_dir", cfg.out_dir);
  out.emplace_back("emit.csv", cfg.emit.csv ? "1" : "0");
  out.emplace_back("emit.svg", cfg.emit.svg ? "1" : "0");
  out.emplace_back("emit.snapshot_every", std::to_string(cfg.emit.snapshot_every));
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Preset definitions run through apply_setting so they cannot drift from the
// accepted key set.
const std::map<std::string, std::vector<std::pair<std::string, std::string>>>& preset_table() {
  using KV = std::vector<std::pair<std::string, std::string>>;
  static const std::map<std::string, KV> table = {
      {"sine_gordon_fd_paper",
       {{"problem.name", "sine_gordon_fd"}, {"problem.n", "200"}, {"problem.alpha", "1"},
        {"dt", "0.01"}, {"steps", "1000"}}},
      {"sine_gordon_spectral_paper",
       {{"problem.name", "sine_gordon_spectral"}, {"problem.n", "200"}, {"problem.alpha", "1"},
        {"dt", "0.01"}, {"steps", "1000"}}},
      {"kdv_paper",
       {{"problem.name", "kdv"}, {"problem.n", "400"}, {"dt", "0.001"}, {"steps", "1000"}}},
      {"nls_paper",
       {{"problem.name", "nls"}, {"problem.n", "200"}, {"problem.gamma", "1"},
        {"dt", "0.05"}, {"steps", "200"}}},
      {"linear_schrodinger_paper",
       {{"problem.name", "linear_schrodinger"}, {"problem.n", "50"},
        {"dt", "0.1"}, {"steps", "500"}, {"solver.tol", "1e-13"}}},
      {"maxwell1d_paper",
       {{"problem.name", "maxwell1d"}, {"problem.n", "100"}, {"problem.c", "1"},
        {"dt", "0.001"}, {"steps", "1000"}}},
      {"maxwell3d_paper",
       {{"problem.name", "maxwell3d"}, {"problem.n", "30"}, {"problem.c", "1"},
        {"dt", "0.01"}, {"steps", "100"}, {"record_every", "10"},
        {"solver.method", "fixed_point"}}},
      {"maxwell3d_desk",
       {{"problem.name", "maxwell3d"}, {"problem.n", "10"}, {"problem.c", "1"},
        {"dt", "0.01"}, {"steps", "100"}, {"record_every", "10"},
        {"solver.method", "fixed_point"}}},
      {"wave2d_gll_paper",
       {{"problem.name", "wave2d_gll"}, {"problem.degree", "5"},
        {"dt", "0.3125"}, {"steps", "32"}}},
      {"wave2d_gll_desk",
       {{"problem.name", "wave2d_gll"}, {"problem.degree", "5"},
        {"dt", "0.625"}, {"steps", "16"}}},
      {"allen_cahn_paper",
       {{"problem.name", "allen_cahn"}, {"problem.n", "100"}, {"problem.d", "0.001"},
        {"dt", "0.001"}, {"steps", "1000"}}},
      {"cahn_hilliard_paper",
       {{"problem.name", "cahn_hilliard"}, {"problem.n", "50"}, {"problem.p", "-1"},
        {"problem.q", "-0.001"}, {"problem.r", "1"},
        {"dt", "0.000833333333333333333"}, {"steps", "1200"}}},
      {"ginzburg_landau_paper",
       {{"problem.name", "ginzburg_landau"}, {"problem.n", "50"}, {"problem.eps", "0.001"},
        {"dt", "0.001"}, {"steps", "1000"}}},
      {"heat_paper",
       {{"problem.name", "heat"}, {"problem.n", "50"}, {"dt", "0.0025"}, {"steps", "400"}}},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, kvs] : preset_table()) v.push_back(name);
    return v;
  }();
  return names;
}

bool is_preset(const std::string& name) { return preset_table().count(name) != 0; }

ExperimentConfig preset_config(const std::string& name) {
  auto it = preset_table().find(name);
  if (it == preset_table().end()) throw ConfigError("config: unknown preset '" + name + "'");
  ExperimentConfig cfg;
  for (const auto& [k, v] : it->second) apply_setting(cfg, k, v);
  cfg.out_dir = "out/" + name;
  return cfg;
}

ExperimentConfig resolve_config(const std::string& source,
                                const std::vector<std::string>& overrides) {
  ExperimentConfig cfg;
  if (is_preset(source)) {
    cfg = preset_config(source);
  } else if (std::ifstream probe(source); probe.good()) {
    cfg = load_config(source);
  } else {
    throw ConfigError("'" + source + "' is neither a preset nor a readable config file");
  }
  for (const std::string& ov : overrides) {
    auto eq = ov.find('=');
    if (eq == std::string::npos)
      throw ConfigError("--set wants key=value, got '" + ov + "'");
    apply_setting(cfg, trim(ov.substr(0, eq)), trim(ov.substr(eq + 1)));
  }
  validate(cfg);
  return cfg;
}

}  // namespace avf

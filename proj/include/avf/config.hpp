#pragma once
// Experiment configuration: a flat key=value text format with dotted section
// keys (problem.name, solver.tol, emit.svg), named presets for the standard
// runs, and command-line overrides applied through the same parser.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "avf/avf.hpp"
#include "avf/integrators.hpp"
#include "avf/zoo.hpp"

namespace avf {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// How a run drives the time axis: one of the three structure-aware one-step
// schemes, or the adaptive reference integrator evaluated on the same grid.
enum class RunScheme { Avf, Midpoint, BackwardEuler, Reference };

std::string_view run_scheme_name(RunScheme s);
RunScheme run_scheme_from_name(std::string_view name);  // throws ConfigError

struct EmitFlags {
  bool csv = true;
  bool svg = true;
  // Snapshot cadence in steps; 0 keeps only the first and last state.
  long snapshot_every = 0;
};

struct ExperimentConfig {
  std::string problem;  // zoo name; must be set before validate()
  ParamMap params;      // problem.<key> entries other than name

  RunScheme scheme = RunScheme::Avf;
  double dt = 0.0;
  long steps = 0;
  long record_every = 1;

  SolveConfig solver;
  ReferenceConfig reference;

  std::uint64_t seed = 0;
  std::string out_dir = "out";
  EmitFlags emit;
};

// Parses one file.  '#' starts a comment, blank lines are skipped, every
// other line must be key=value with a known key.
ExperimentConfig load_config(const std::string& path);

// Applies a single key=value override (the --set flag).
void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value);

// Checks invariants that do not need the problem built: a problem name is
// present, dt > 0, steps >= 1, record_every >= 1, sane solver settings.
void validate(const ExperimentConfig& cfg);

// Resolved key=value lines in parse-back form, sorted by key; the manifest
// records these so a run can be replayed exactly.
std::vector<std::pair<std::string, std::string>> config_entries(const ExperimentConfig& cfg);

const std::vector<std::string>& preset_names();
bool is_preset(const std::string& name);
ExperimentConfig preset_config(const std::string& name);  // throws ConfigError

// `source` is a preset name or a config file path (presets win ties).
ExperimentConfig resolve_config(const std::string& source,
                                const std::vector<std::string>& overrides);

}  // namespace avf

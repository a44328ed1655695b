#pragma once
// Whole-experiment driver: builds the configured problem, integrates, writes
// the output tree (CSV series, snapshots, charts, manifest).  Sweeps and
// scheme comparisons derive per-member configs from a base one and run the
// members concurrently in isolated directories.

#include <string>
#include <vector>

#include "avf/config.hpp"
#include "avf/diagnostics.hpp"

namespace avf {

enum class RunStatus { Ok, NonConvergent };

struct RunResult {
  RunStatus status = RunStatus::Ok;
  std::string message;  // failure context when not Ok
  double runtime_seconds = 0.0;
  Trajectory traj;      // everything that completed
  std::vector<std::string> monitor_names;  // driver first
  std::vector<DriftReport> drifts;         // parallel to monitor_names
};

// Runs one experiment and writes cfg.out_dir.  Throws ConfigError /
// std::invalid_argument for bad configuration, IoError for output failures;
// an implicit-solver failure is reported in the result, with the completed
// part of the run written out.
RunResult run_experiment(const ExperimentConfig& cfg);

struct SweepResult {
  std::vector<double> dts;      // descending
  std::vector<double> errors;   // global error at t_end vs reference; NaN if failed
  double order = 0.0;           // least-squares slope where errors exist
  bool order_reliable = false;
};

// Re-runs the base experiment at each dt (t_end fixed at base dt * steps),
// members concurrent under <out_dir>/dt_<value>/, and compares final states
// against the adaptive reference.  Writes sweep.csv and a manifest.
SweepResult run_sweep(const ExperimentConfig& base, std::vector<double> dts);

struct CompareResult {
  std::vector<std::string> schemes;
  std::vector<RunResult> runs;
};

// Runs the same problem once per scheme under <out_dir>/<scheme>/; when
// with_reference is set, also writes each scheme's error-vs-time series
// against the adaptive reference on the recorded grid.
CompareResult run_compare(const ExperimentConfig& base, const std::vector<std::string>& schemes,
                          bool with_reference);

}  // namespace avf

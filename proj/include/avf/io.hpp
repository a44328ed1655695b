#pragma once
// Output writers for experiment runs: CSV series, grid snapshots keyed by
// the state layout, key-value manifests, and small self-contained SVG line
// charts.  Floats are printed with %.17g so identical runs produce
// byte-identical files and values round-trip exactly.

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "avf/integrators.hpp"
#include "avf/system.hpp"

namespace avf {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string format_g17(double v);

void ensure_dir(const std::string& path);

// step,t,monitor,H_bar,H_bar_dx,drift_abs,drift_rel per recorded state and
// monitor.  H_bar is the dimensionless sum, H_bar_dx the volume-scaled value
// drifts are measured on; dt recovers the step index from the time.
void write_energy_csv(const std::string& path, const SemiDiscreteSystem& sys,
                      const Trajectory& traj, double dt);

// step,iterations,residual for every implicit solve the run performed.
void write_solver_csv(const std::string& path, const Trajectory& traj);

// Schema follows the layout: "x,<field>" for 1D scalars, a wide or long
// component table for stacked pairs, "x,y,..." on tensor grids, "i,j,k,..."
// for 3D blocks.
void write_snapshot_csv(const std::string& path, const StateLayout& layout, const Vec& state);

void write_manifest(const std::string& path,
                    const std::vector<std::pair<std::string, std::string>>& entries);

struct ChartSeries {
  std::string label;
  Vec x, y;
};

void write_line_chart_svg(const std::string& path, const std::string& title,
                          const std::string& x_label, const std::string& y_label,
                          const std::vector<ChartSeries>& series);

}  // namespace avf

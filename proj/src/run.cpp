#include "avf/run.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <future>
#include <limits>

#include <Eigen/Core>
#include <fftw3.h>

#include "avf/io.hpp"

namespace avf {
namespace {

Scheme to_scheme(RunScheme s) {
  switch (s) {
    case RunScheme::Avf: return Scheme::Avf;
    case RunScheme::Midpoint: return Scheme::Midpoint;
    case RunScheme::BackwardEuler: return Scheme::BackwardEuler;
    case RunScheme::Reference: break;
  }
  throw std::logic_error("reference mode has no one-step scheme");
}

// Shortest exact decimal form; used for directory names derived from dt.
std::string short_real(double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

// The times integrate() would record for this config.
Vec record_grid(const ExperimentConfig& cfg) {
  Vec grid{0.0};
  for (long k = cfg.record_every; k < cfg.steps; k += cfg.record_every)
    grid.push_back(double(k) * cfg.dt);
  grid.push_back(double(cfg.steps) * cfg.dt);
  return grid;
}

double elapsed_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double lsq_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= double(x.size());
  my /= double(x.size());
  double num = 0, den = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    num += (x[i] - mx) * (y[i] - my);
    den += (x[i] - mx) * (x[i] - mx);
  }
  return num / den;
}

void write_run_outputs(const ExperimentConfig& cfg, const SemiDiscreteSystem& sys,
                       const RunResult& res) {
  const Trajectory& traj = res.traj;
  if (cfg.emit.csv) {
    write_energy_csv(cfg.out_dir + "/energy.csv", sys, traj, cfg.dt);
    if (cfg.scheme != RunScheme::Reference)
      write_solver_csv(cfg.out_dir + "/solver.csv", traj);

    ensure_dir(cfg.out_dir + "/snapshots");
    std::size_t last = traj.states.size() - 1;
    for (std::size_t k = 0; k < traj.states.size(); ++k) {
      long step = std::lround(traj.times[k] / cfg.dt);
      bool due = step == 0 || k == last ||
                 (cfg.emit.snapshot_every > 0 && step % cfg.emit.snapshot_every == 0);
      if (!due) continue;
      char name[32];
      std::snprintf(name, sizeof name, "state_%06ld.csv", step);
      write_snapshot_csv(cfg.out_dir + "/snapshots/" + name, sys.layout, traj.states[k]);
    }
  }

  if (cfg.emit.svg) {
    std::vector<ChartSeries> drift_series;
    for (std::size_t m = 0; m < res.drifts.size(); ++m) {
      const DriftReport& d = res.drifts[m];
      double denom = std::fabs(d.initial) > 0.0 ? std::fabs(d.initial) : 1.0;
      ChartSeries s;
      s.label = res.monitor_names[m];
      s.x = d.times;
      s.y.resize(d.values.size());
      for (std::size_t i = 0; i < d.values.size(); ++i)
        s.y[i] = (d.values[i] - d.initial) / denom;
      drift_series.push_back(std::move(s));
    }
    write_line_chart_svg(cfg.out_dir + "/energy_drift.svg",
                         sys.name + ": relative energy drift (" +
                             std::string(run_scheme_name(cfg.scheme)) + ")",
                         "t", "drift / |H(0)|", drift_series);

    bool plottable_1d = !sys.layout.components.empty();
    for (const auto& c : sys.layout.components)
      plottable_1d = plottable_1d && c.coords.size() == c.count;
    if (plottable_1d) {
      std::vector<ChartSeries> state_series;
      for (const auto& c : sys.layout.components) {
        ChartSeries s;
        s.label = c.name;
        s.x = c.coords;
        s.y.assign(traj.final_state().begin() + long(c.offset),
                   traj.final_state().begin() + long(c.offset + c.count));
        state_series.push_back(std::move(s));
      }
      write_line_chart_svg(cfg.out_dir + "/state.svg",
                           sys.name + " at t = " + short_real(traj.times.back()), "x", "value",
                           state_series);
    }
  }

  std::vector<std::pair<std::string, std::string>> man;
  man.emplace_back("status", res.status == RunStatus::Ok ? "ok" : "nonconvergence");
  if (!res.message.empty()) man.emplace_back("error", res.message);
  for (const auto& [k, v] : config_entries(cfg)) man.emplace_back("config." + k, v);
  man.emplace_back("problem.dim", std::to_string(sys.dim()));
  man.emplace_back("problem.conservative", sys.conservative() ? "yes" : "no");
  man.emplace_back("plan", describe_plan(sys.driver, {}));
  for (std::size_t m = 0; m < res.drifts.size(); ++m) {
    const std::string pre = "monitor." + res.monitor_names[m] + ".";
    man.emplace_back(pre + "max_drift_abs", format_g17(res.drifts[m].max_abs_drift));
    man.emplace_back(pre + "max_drift_rel", format_g17(res.drifts[m].max_rel_drift));
    if (!sys.conservative()) {
      MonotonicityReport mono = monotonicity_verdict(*sys.monitors()[m], traj);
      man.emplace_back(pre + "monotone", mono.monotone ? "yes" : "no");
      man.emplace_back(pre + "worst_increment", format_g17(mono.worst_increment));
      if (!mono.monotone)
        man.emplace_back(pre + "first_violation_index", std::to_string(mono.first_violation));
    }
  }
  if (!traj.solver.empty()) {
    long total_it = 0, builds = 0;
    double worst = 0.0;
    for (const auto& s : traj.solver) {
      total_it += s.iterations;
      builds += s.jacobian_builds;
      worst = std::max(worst, s.residual);
    }
    man.emplace_back("solver.steps", std::to_string(traj.solver.size()));
    man.emplace_back("solver.total_iterations", std::to_string(total_it));
    man.emplace_back("solver.jacobian_builds", std::to_string(builds));
    man.emplace_back("solver.max_residual", format_g17(worst));
  }
  man.emplace_back("runtime_seconds", format_g17(res.runtime_seconds));
  man.emplace_back("version.compiler", __VERSION__);
  man.emplace_back("version.eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                                        std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                        std::to_string(EIGEN_MINOR_VERSION));
  man.emplace_back("version.fftw", fftw_version);
  write_manifest(cfg.out_dir + "/manifest.txt", man);
}

}  // namespace

RunResult run_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  Problem prob = build_problem(cfg.problem, cfg.params, cfg.seed);
  const SemiDiscreteSystem& sys = prob.system;

  ensure_dir(cfg.out_dir);

  RunResult res;
  auto t0 = std::chrono::steady_clock::now();
  if (cfg.scheme == RunScheme::Reference) {
    Vec grid = record_grid(cfg);
    try {
      auto states = reference_solution(sys, prob.u0, grid, cfg.reference);
      res.traj.times = std::move(grid);
      res.traj.states = std::move(states);
    } catch (const std::exception& e) {
      res.status = RunStatus::NonConvergent;
      res.message = e.what();
      res.traj.times = Vec{0.0};
      res.traj.states = {prob.u0};
    }
  } else {
    try {
      integrate(sys, to_scheme(cfg.scheme), prob.u0, cfg.dt, cfg.steps, {}, cfg.solver,
                cfg.record_every, res.traj);
    } catch (const NonConvergence& e) {
      res.status = RunStatus::NonConvergent;
      res.message = e.what();
    }
  }
  res.runtime_seconds = elapsed_since(t0);

  for (const EnergyMonitor* m : sys.monitors()) {
    res.monitor_names.push_back(m->name());
    res.drifts.push_back(energy_drift(*m, res.traj));
  }
  write_run_outputs(cfg, sys, res);
  return res;
}

SweepResult run_sweep(const ExperimentConfig& base, std::vector<double> dts) {
  validate(base);
  if (base.scheme == RunScheme::Reference)
    throw ConfigError("sweep: pick a fixed-step scheme, not 'reference'");
  if (dts.size() < 2) throw ConfigError("sweep: need at least two dt values");
  for (double dt : dts)
    if (!(dt > 0.0)) throw ConfigError("sweep: dt values must be > 0");
  std::sort(dts.begin(), dts.end(), std::greater<>());
  dts.erase(std::unique(dts.begin(), dts.end()), dts.end());

  double t_end = base.dt * double(base.steps);
  std::vector<ExperimentConfig> members;
  for (double dt : dts) {
    long steps = std::lround(t_end / dt);
    if (steps < 1 || std::fabs(double(steps) * dt - t_end) > 1e-9 * std::max(1.0, t_end))
      throw ConfigError("sweep: dt " + short_real(dt) + " does not divide t_end " +
                        short_real(t_end));
    ExperimentConfig m = base;
    m.dt = dt;
    m.steps = steps;
    m.out_dir = base.out_dir + "/dt_" + short_real(dt);
    members.push_back(std::move(m));
  }

  ensure_dir(base.out_dir);
  std::vector<std::future<RunResult>> futures;
  for (const auto& m : members)
    futures.push_back(std::async(std::launch::async, [m] { return run_experiment(m); }));

  // The reference integration shares the wall clock with the members.
  Problem ref_prob = build_problem(base.problem, base.params, base.seed);
  Vec ref_final = reference_solution(ref_prob.system, ref_prob.u0, Vec{0.0, t_end},
                                     base.reference)[1];
  double dxv = ref_prob.system.driver.dx_volume();

  SweepResult sweep;
  sweep.dts = dts;
  std::vector<std::string> statuses;
  for (std::size_t i = 0; i < futures.size(); ++i) {
    RunResult r = futures[i].get();
    bool complete = r.status == RunStatus::Ok && !r.traj.states.empty() &&
                    std::fabs(r.traj.times.back() - t_end) <= 1e-9 * std::max(1.0, t_end);
    sweep.errors.push_back(
        complete ? global_error(r.traj.final_state(), ref_final, dxv)
                 : std::numeric_limits<double>::quiet_NaN());
    statuses.push_back(r.status == RunStatus::Ok ? "ok" : "nonconvergence");
  }

  std::vector<double> lx, ly;
  bool clean = true;
  for (std::size_t i = 0; i < sweep.errors.size(); ++i) {
    double e = sweep.errors[i];
    if (std::isfinite(e) && e > 0.0) {
      lx.push_back(std::log(sweep.dts[i]));
      ly.push_back(std::log(e));
      if (e < 1e-14) clean = false;  // at rounding floor; slope untrustworthy
    } else {
      clean = false;
    }
  }
  if (lx.size() >= 2) {
    sweep.order = lsq_slope(lx, ly);
    sweep.order_reliable = clean;
  }

  {
    auto path = base.out_dir + "/sweep.csv";
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << "dt,error\n";
    for (std::size_t i = 0; i < sweep.dts.size(); ++i)
      out << format_g17(sweep.dts[i]) << ',' << format_g17(sweep.errors[i]) << '\n';
    if (!out.flush()) throw IoError("write to '" + path + "' failed");
  }

  std::vector<std::pair<std::string, std::string>> man;
  man.emplace_back("kind", "sweep");
  man.emplace_back("t_end", format_g17(t_end));
  man.emplace_back("scheme", std::string(run_scheme_name(base.scheme)));
  man.emplace_back("observed_order", format_g17(sweep.order));
  man.emplace_back("order_reliable", sweep.order_reliable ? "yes" : "no");
  for (std::size_t i = 0; i < dts.size(); ++i)
    man.emplace_back("member.dt_" + short_real(dts[i]), statuses[i]);
  write_manifest(base.out_dir + "/manifest.txt", man);
  return sweep;
}

CompareResult run_compare(const ExperimentConfig& base, const std::vector<std::string>& schemes,
                          bool with_reference) {
  validate(base);
  if (schemes.empty()) throw ConfigError("compare: need at least one scheme");

  std::vector<ExperimentConfig> members;
  for (const std::string& s : schemes) {
    ExperimentConfig m = base;
    m.scheme = run_scheme_from_name(s);
    m.out_dir = base.out_dir + "/" + s;
    members.push_back(std::move(m));
  }

  ensure_dir(base.out_dir);
  std::vector<std::future<RunResult>> futures;
  for (const auto& m : members)
    futures.push_back(std::async(std::launch::async, [m] { return run_experiment(m); }));

  std::vector<Vec> ref_states;
  Vec grid = record_grid(base);
  double dxv = 0.0;
  if (with_reference) {
    Problem ref_prob = build_problem(base.problem, base.params, base.seed);
    dxv = ref_prob.system.driver.dx_volume();
    ref_states = reference_solution(ref_prob.system, ref_prob.u0, grid, base.reference);
  }

  CompareResult cmp;
  cmp.schemes = schemes;
  for (std::size_t i = 0; i < futures.size(); ++i) {
    RunResult r = futures[i].get();
    if (with_reference && members[i].scheme != RunScheme::Reference) {
      auto path = members[i].out_dir + "/error.csv";
      std::ofstream out(path, std::ios::binary);
      if (!out) throw IoError("cannot open '" + path + "' for writing");
      out << "t,error\n";
      for (std::size_t k = 0; k < r.traj.states.size(); ++k) {
        long step = std::lround(r.traj.times[k] / base.dt);
        std::size_t gi = step == base.steps ? grid.size() - 1
                                            : std::size_t(step / base.record_every);
        if (gi >= ref_states.size()) continue;
        out << format_g17(r.traj.times[k]) << ','
            << format_g17(global_error(r.traj.states[k], ref_states[gi], dxv)) << '\n';
      }
      if (!out.flush()) throw IoError("write to '" + path + "' failed");
    }
    cmp.runs.push_back(std::move(r));
  }

  std::vector<std::pair<std::string, std::string>> man;
  man.emplace_back("kind", "compare");
  man.emplace_back("reference_errors", with_reference ? "yes" : "no");
  for (std::size_t i = 0; i < schemes.size(); ++i)
    man.emplace_back("member." + schemes[i],
                     cmp.runs[i].status == RunStatus::Ok ? "ok" : "nonconvergence");
  write_manifest(base.out_dir + "/manifest.txt", man);
  return cmp;
}

}  // namespace avf

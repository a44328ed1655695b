#include "avf/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <future>

namespace avf {

DriftReport energy_drift(const EnergyMonitor& h, const Trajectory& traj) {
  DriftReport rep;
  rep.times = traj.times;
  rep.values.reserve(traj.states.size());
  for (const Vec& u : traj.states) rep.values.push_back(h.energy(u));
  rep.initial = rep.values.front();
  double denom = std::abs(rep.initial) > 0.0 ? std::abs(rep.initial) : 1.0;
  for (double v : rep.values) {
    double d = std::abs(v - rep.initial);
    rep.max_abs_drift = std::max(rep.max_abs_drift, d);
  }
  rep.max_rel_drift = rep.max_abs_drift / denom;
  return rep;
}

MonotonicityReport monotonicity_verdict(const EnergyMonitor& h, const Trajectory& traj,
                                        double slack) {
  MonotonicityReport rep;
  double prev = h.energy(traj.states.front());
  bool first = true;
  for (std::size_t k = 1; k < traj.states.size(); ++k) {
    double cur = h.energy(traj.states[k]);
    double inc = cur - prev;
    if (first || inc > rep.worst_increment) {
      rep.worst_increment = inc;
      rep.worst_index = k - 1;
      first = false;
    }
    if (inc > slack && rep.monotone) {
      rep.monotone = false;
      rep.first_violation = k - 1;
      rep.first_magnitude = inc;
    }
    prev = cur;
  }
  return rep;
}

double global_error(const Vec& a, const Vec& b, double dx_volume) {
  if (a.size() != b.size()) throw std::invalid_argument("global_error: size mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    acc += d * d;
  }
  return std::sqrt(dx_volume * acc);
}

OrderEstimate observed_order(const SemiDiscreteSystem& sys, Scheme scheme, const Vec& u0,
                             const std::vector<double>& dts, double t_end,
                             const AveragedFieldPlan& plan, const SolveConfig& cfg,
                             const ReferenceConfig& ref) {
  if (dts.size() < 3)
    throw UnreliableOrderEstimate("order estimation needs at least three step sizes");
  std::vector<long> steps(dts.size());
  for (std::size_t i = 0; i < dts.size(); ++i) {
    if (!(dts[i] > 0.0)) throw UnreliableOrderEstimate("step sizes must be positive");
    if (i > 0 && !(dts[i] < dts[i - 1]))
      throw UnreliableOrderEstimate("step sizes must decrease");
    double raw = t_end / dts[i];
    steps[i] = std::lround(raw);
    if (steps[i] < 1 || std::abs(raw - double(steps[i])) > 1e-9 * std::max(1.0, raw))
      throw UnreliableOrderEstimate("every step size must divide the end time");
  }

  Vec grid{0.0, t_end};
  Vec exact = reference_solution(sys, u0, grid, ref).back();

  // The sweep members are independent; run them concurrently and join in
  // order so failures surface deterministically.
  std::vector<std::future<Vec>> runs;
  runs.reserve(dts.size());
  for (std::size_t i = 0; i < dts.size(); ++i) {
    runs.push_back(std::async(std::launch::async, [&, i]() {
      Trajectory traj;
      integrate(sys, scheme, u0, dts[i], steps[i], plan, cfg, steps[i], traj);
      return traj.final_state();
    }));
  }

  OrderEstimate est;
  est.dts = dts;
  for (auto& fut : runs) {
    Vec uf = fut.get();
    est.errors.push_back(global_error(uf, exact, sys.driver.dx_volume()));
  }

  for (double e : est.errors) {
    if (!std::isfinite(e)) throw UnreliableOrderEstimate("a sweep member produced a non-finite error");
    if (e < 1e-12)
      throw UnreliableOrderEstimate("errors sit at the rounding floor; the slope is meaningless");
  }

  // Least-squares slope of log(error) against log(dt).
  std::size_t m = dts.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    double x = std::log(dts[i]), y = std::log(est.errors[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  est.order = (double(m) * sxy - sx * sy) / (double(m) * sxx - sx * sx);
  return est;
}

}  // namespace avf

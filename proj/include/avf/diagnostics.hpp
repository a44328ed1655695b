#pragma once
// Post-hoc measurements on recorded runs: energy drift against the initial
// value, monotone-decay verdicts for dissipative problems, grid-norm global
// errors against a reference, and empirical convergence orders from a step-
// size sweep.

#include <stdexcept>
#include <vector>

#include "avf/integrators.hpp"
#include "avf/system.hpp"
#include "avf/vec.hpp"

namespace avf {

struct DriftReport {
  Vec times;
  Vec values;               // monitor value at each recorded time
  double initial = 0.0;
  double max_abs_drift = 0.0;
  double max_rel_drift = 0.0;  // abs drift over |initial| (abs drift if initial is 0)
};

DriftReport energy_drift(const EnergyMonitor& h, const Trajectory& traj);

struct MonotonicityReport {
  bool monotone = true;           // every increment <= slack
  double worst_increment = 0.0;   // most positive H(t_{k+1}) - H(t_k)
  std::size_t worst_index = 0;    // k of that increment
  std::size_t first_violation = 0;     // k of the first increment > slack
  double first_magnitude = 0.0;        // that increment
};

MonotonicityReport monotonicity_verdict(const EnergyMonitor& h, const Trajectory& traj,
                                        double slack = 1e-10);

// Discrete L2 distance sqrt(dx_volume * sum |a_i - b_i|^2).
double global_error(const Vec& a, const Vec& b, double dx_volume);

// ---------------------------------------------------------------------------
// Convergence order

struct OrderEstimate {
  double order = 0.0;          // least-squares slope of log error vs log dt
  std::vector<double> dts;
  std::vector<double> errors;  // grid-norm error at t_end per dt
};

class UnreliableOrderEstimate : public std::runtime_error {
 public:
  explicit UnreliableOrderEstimate(const std::string& why) : std::runtime_error(why) {}
};

// Integrates to t_end with each dt (concurrently), measures the final-state
// error against an adaptive reference, and fits the slope.  Throws
// UnreliableOrderEstimate when fewer than three step sizes are given, a dt
// does not divide t_end, or an error sits at the rounding floor where the
// slope means nothing.
OrderEstimate observed_order(const SemiDiscreteSystem& sys, Scheme scheme, const Vec& u0,
                             const std::vector<double>& dts, double t_end,
                             const AveragedFieldPlan& plan = {}, const SolveConfig& cfg = {},
                             const ReferenceConfig& ref = {});

}  // namespace avf

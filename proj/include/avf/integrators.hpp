#pragma once
// Fixed-step time integration for the workbench.  The averaged-field step is
// the subject; implicit midpoint and backward Euler are the comparison
// schemes (midpoint matches the averaged step on quadratic energies,
// backward Euler over-dissipates); a Dormand-Prince 5(4) drive with tight
// tolerances supplies reference solutions for global-error studies.

#include <string>
#include <string_view>
#include <vector>

#include "avf/avf.hpp"
#include "avf/system.hpp"
#include "avf/vec.hpp"

namespace avf {

enum class Scheme { Avf, Midpoint, BackwardEuler };

std::string_view scheme_name(Scheme s);
Scheme scheme_from_name(std::string_view name);  // throws on unknown names

SolveStats midpoint_step(const SemiDiscreteSystem& sys, const Vec& u0, double dt, Vec& u1,
                         const SolveConfig& cfg = {});
SolveStats backward_euler_step(const SemiDiscreteSystem& sys, const Vec& u0, double dt, Vec& u1,
                               const SolveConfig& cfg = {});
SolveStats scheme_step(Scheme s, const SemiDiscreteSystem& sys, const Vec& u0, double dt, Vec& u1,
                       const AveragedFieldPlan& plan = {}, const SolveConfig& cfg = {});

// A recorded run: states at a subset of step boundaries, solver statistics
// for every step taken.
struct Trajectory {
  Vec times;
  std::vector<Vec> states;
  std::vector<SolveStats> solver;

  const Vec& initial() const { return states.front(); }
  const Vec& final_state() const { return states.back(); }
};

// Steps `steps` times with fixed dt, recording the initial state, every
// record_every-th step boundary, and the final state.  Fills `out`
// incrementally so a NonConvergence mid-run leaves the completed part
// available to the caller.
void integrate(const SemiDiscreteSystem& sys, Scheme scheme, const Vec& u0, double dt, long steps,
               const AveragedFieldPlan& plan, const SolveConfig& cfg, long record_every,
               Trajectory& out);

// ---------------------------------------------------------------------------
// Reference solutions

struct ReferenceConfig {
  double rtol = 1e-12;
  double atol = 1e-12;
  long max_steps = 20'000'000;
};

// Integrates du/dt = S grad H adaptively and returns the states at the given
// times (t_grid must be strictly increasing; the first entry is the initial
// time of u0).  Steps are clamped to land on each grid time exactly rather
// than interpolating.
std::vector<Vec> reference_solution(const SemiDiscreteSystem& sys, const Vec& u0,
                                    const Vec& t_grid, const ReferenceConfig& cfg = {});

}  // namespace avf

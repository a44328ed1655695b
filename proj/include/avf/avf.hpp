#pragma once
// The averaged-field time step.  One step solves
//
//   u1 = u0 + dt * S * gbar(u0, u1),
//
// where gbar is the exact average of grad H along the straight segment from
// u0 to u1.  Because S is constant and gbar is a true segment average, the
// scheme reproduces the energy balance of the flow step by step: H is
// conserved exactly when S is skew and decays monotonically when S is
// negative semidefinite, independent of dt.
//
// The segment average is computed per energy term by the closed forms the
// term classes provide; a quadrature plan replaces all of them by m-point
// Gauss sampling of the assembled gradient, which is the independent cross-
// check the tests lean on.

#include <functional>
#include <stdexcept>
#include <string>

#include "avf/energy.hpp"
#include "avf/system.hpp"
#include "avf/vec.hpp"

namespace avf {

// (cos b - cos a) / (b - a), continued across the removable singularity at
// b = a, where it equals -sin(a).  This is the exact segment average of
// -sin, the building block of the cosine-well terms.
double trig_difference_quotient(double a, double b);

struct AveragedFieldPlan {
  // 0 means per-term closed forms; m > 0 samples the full gradient with an
  // m-point Gauss rule instead.
  int gauss_override = 0;

  static AveragedFieldPlan exact() { return {}; }
  static AveragedFieldPlan quadrature(int m);
};

// g = average of grad H over the segment [u0, u1] (overwrites g).
void averaged_gradient(const EnergyMonitor& h, const Vec& u0, const Vec& u1,
                       const AveragedFieldPlan& plan, Vec& g);

// f = S * averaged gradient of the driver (overwrites f).
void averaged_field(const SemiDiscreteSystem& sys, const Vec& u0, const Vec& u1,
                    const AveragedFieldPlan& plan, Vec& f);

// One line per term saying how its average is computed under the plan.
std::string describe_plan(const EnergyMonitor& h, const AveragedFieldPlan& plan);

// ---------------------------------------------------------------------------
// Implicit solver shared by the averaged-field step and the comparison
// schemes (implicit midpoint, backward Euler).

enum class SolveMethod { Newton, FixedPoint };

struct SolveConfig {
  SolveMethod method = SolveMethod::Newton;
  double tol = 1e-12;  // on the max norm of the step residual
  int max_iter = 100;
};

struct SolveStats {
  int iterations = 0;
  double residual = 0.0;
  int jacobian_builds = 0;
};

class NonConvergence : public std::runtime_error {
 public:
  NonConvergence(const std::string& context, int iterations_, double residual_);
  int iterations;
  double residual;
};

// The fixed-point shape v = base + dt * S * g(v): `gradient` overwrites its
// output, `gradient_jacobian` accumulates dg/dv into a zeroed dense matrix
// (only needed by Newton; may be empty for the fixed-point method).
struct ImplicitProblem {
  const Matrix* op = nullptr;
  std::function<void(const Vec&, Vec&)> gradient;
  std::function<void(const Vec&, DenseMat&)> gradient_jacobian;
};

// Solves for v starting from the explicit-Euler predictor; throws
// NonConvergence when the iteration stalls, diverges, or leaves the reals.
SolveStats solve_implicit(const ImplicitProblem& p, const Vec& base, double dt, Vec& v,
                          const SolveConfig& cfg);

// Newton assembles a dim x dim Jacobian; past this size it refuses and the
// caller should switch to the fixed-point method.
inline constexpr std::size_t newton_dense_limit = 4096;

// One averaged-field step u0 -> u1 (u1 may alias u0's storage afterwards,
// but must be a distinct vector during the call).
SolveStats avf_step(const SemiDiscreteSystem& sys, const Vec& u0, double dt, Vec& u1,
                    const AveragedFieldPlan& plan = {}, const SolveConfig& cfg = {});

}  // namespace avf

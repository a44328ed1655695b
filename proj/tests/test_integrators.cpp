#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "avf/integrators.hpp"
#include "avf/operators.hpp"
#include "avf/zoo.hpp"

#include <cmath>
#include <memory>
#include <numbers>

using namespace avf;
using std::numbers::pi;

namespace {

std::shared_ptr<const Matrix> shared(Matrix m) { return std::make_shared<const Matrix>(std::move(m)); }

// du/dt = -lambda u as a one-dimensional dissipative system: S = -lambda,
// H = u^2/2.
SemiDiscreteSystem scalar_decay(double lambda) {
  EnergyMonitor h("H", 1, 1.0);
  h.add_term(std::make_shared<AffineTerm>(0, shared(Matrix::identity(1))));
  return {"decay", {shared(Matrix::identity(1, -lambda)), MatrixClass::NegativeSemidefinite},
          std::move(h), {}, {}};
}

// The harmonic oscillator q' = p, p' = -q: S = [0 1; -1 0], H = (q^2+p^2)/2.
SemiDiscreteSystem oscillator() {
  EnergyMonitor h("H", 2, 1.0);
  h.add_term(std::make_shared<AffineTerm>(0, shared(Matrix::identity(2))));
  BlockBuilder bb(2, 2);
  bb.add_entry(0, 1, 1.0);
  bb.add_entry(1, 0, -1.0);
  return {"oscillator", {shared(bb.build()), MatrixClass::Skew}, std::move(h), {}, {}};
}

}  // namespace

TEST_CASE("scheme names round-trip and reject junk") {
  CHECK(scheme_name(Scheme::Avf) == "avf");
  CHECK(scheme_name(Scheme::Midpoint) == "midpoint");
  CHECK(scheme_name(Scheme::BackwardEuler) == "backward_euler");
  CHECK(scheme_from_name("avf") == Scheme::Avf);
  CHECK(scheme_from_name("midpoint") == Scheme::Midpoint);
  CHECK(scheme_from_name("backward_euler") == Scheme::BackwardEuler);
  CHECK_THROWS(scheme_from_name("leapfrog"));
}

TEST_CASE("backward Euler solves the scalar decay to its textbook formula") {
  SemiDiscreteSystem sys = scalar_decay(3.0);
  Vec u0 = {2.0}, u1(1);
  backward_euler_step(sys, u0, 0.1, u1);
  // (1 + lambda dt) u1 = u0.
  CHECK(u1[0] == doctest::Approx(2.0 / 1.3).epsilon(1e-13));

  // Midpoint gives the (1 - z/2)/(1 + z/2) rational map.
  midpoint_step(sys, u0, 0.1, u1);
  CHECK(u1[0] == doctest::Approx(2.0 * (1.0 - 0.15) / (1.0 + 0.15)).epsilon(1e-13));
}

TEST_CASE("midpoint conserves quadratic invariants on the oscillator") {
  SemiDiscreteSystem sys = oscillator();
  Vec u = {1.0, 0.0}, next(2);
  for (int k = 0; k < 200; ++k) {
    midpoint_step(sys, u, 0.1, next);
    u = next;
    CHECK(u[0] * u[0] + u[1] * u[1] == doctest::Approx(1.0).epsilon(1e-12));
  }
  // After n steps the state is an exact rotation by n*theta with
  // theta = 2 atan(dt/2); check the angle, not just the radius.
  double theta = 2.0 * std::atan(0.05);
  CHECK(u[0] == doctest::Approx(std::cos(200.0 * theta)).epsilon(1e-10));
  CHECK(u[1] == doctest::Approx(-std::sin(200.0 * theta)).epsilon(1e-10));
}

TEST_CASE("the averaged-field scheme coincides with midpoint on quadratic energies") {
  Problem heat = build_problem("heat", {{"n", 20.0}});
  Vec a(heat.u0.size()), b(heat.u0.size());
  scheme_step(Scheme::Avf, heat.system, heat.u0, 0.01, a);
  scheme_step(Scheme::Midpoint, heat.system, heat.u0, 0.01, b);
  for (std::size_t i = 0; i < a.size(); ++i)
    CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-12).scale(1.0));
}

TEST_CASE("heat flow matches the exact semigroup in the discrete eigenbasis") {
  // The Dirichlet Laplacian on n interior nodes has eigenvectors sin(j k pi/(n+1))
  // with eigenvalues -4 sin^2(k pi/(2(n+1)))/dx^2; expanding u0 there gives the
  // exact flow of the semi-discrete system to compare against.
  Problem heat = build_problem("heat", {{"n", 20.0}});
  const std::size_t n = heat.u0.size();  // 19 interior nodes
  const double dx = 1.0 / double(n + 1);

  auto exact_at = [&](double t) {
    Vec u(n, 0.0);
    for (std::size_t k = 1; k <= n; ++k) {
      double coef = 0.0;
      for (std::size_t j = 1; j <= n; ++j)
        coef += heat.u0[j - 1] * std::sin(double(j) * double(k) * pi / double(n + 1));
      coef *= 2.0 / double(n + 1);
      double s = std::sin(double(k) * pi / (2.0 * double(n + 1)));
      double lam = -4.0 * s * s / (dx * dx);
      for (std::size_t j = 1; j <= n; ++j)
        u[j - 1] += coef * std::exp(lam * t) * std::sin(double(j) * double(k) * pi / double(n + 1));
    }
    return u;
  };

  // Reference solver against the eigen-exact flow at t = 0.05.
  std::vector<Vec> ref = reference_solution(heat.system, heat.u0, {0.0, 0.05});
  Vec ex = exact_at(0.05);
  for (std::size_t i = 0; i < n; ++i) CHECK(ref[1][i] == doctest::Approx(ex[i]).epsilon(1e-9).scale(1.0));

  // And the averaged-field scheme converges to it at second order.  A single
  // eigenmode start keeps every dt in the asymptotic regime (the mixed-mode
  // u0 puts dt*lambda near 20 for the stiffest modes).
  Vec mode(n);
  double s1 = std::sin(pi / (2.0 * double(n + 1)));
  double lam1 = -4.0 * s1 * s1 / (dx * dx);
  for (std::size_t j = 1; j <= n; ++j) mode[j - 1] = std::sin(double(j) * pi / double(n + 1));
  auto err_at = [&](double dt, long steps) {
    Trajectory traj;
    integrate(heat.system, Scheme::Avf, mode, dt, steps, {}, {}, steps, traj);
    double decay = std::exp(lam1 * dt * double(steps));
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      worst = std::max(worst, std::fabs(traj.final_state()[i] - decay * mode[i]));
    return worst;
  };
  double e1 = err_at(0.0125, 4), e2 = err_at(0.00625, 8);
  CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.2));
}

TEST_CASE("backward Euler dissipates the heat energies monotonically") {
  Problem heat = build_problem("heat");
  Trajectory traj;
  integrate(heat.system, Scheme::BackwardEuler, heat.u0, 0.0025, 100, {}, {}, 1, traj);
  for (const EnergyMonitor* m : heat.system.monitors()) {
    double prev = m->energy(traj.states[0]);
    for (std::size_t k = 1; k < traj.states.size(); ++k) {
      double h = m->energy(traj.states[k]);
      CHECK(h <= prev + 1e-12);
      prev = h;
    }
  }
}

TEST_CASE("integrate records the requested boundaries and all solver stats") {
  Problem sg = build_problem("sine_gordon_fd", {{"n", 24.0}});
  Trajectory traj;
  integrate(sg.system, Scheme::Avf, sg.u0, 0.01, 10, {}, {}, 4, traj);

  REQUIRE(traj.times.size() == 4);  // steps 0, 4, 8, 10
  CHECK(traj.times[0] == 0.0);
  CHECK(traj.times[1] == doctest::Approx(0.04));
  CHECK(traj.times[2] == doctest::Approx(0.08));
  CHECK(traj.times[3] == doctest::Approx(0.10));
  CHECK(traj.solver.size() == 10);
  CHECK(traj.initial() == sg.u0);
  for (const SolveStats& s : traj.solver) CHECK(s.residual <= 1e-12);
}

TEST_CASE("the reference solver reproduces the oscillator rotation") {
  SemiDiscreteSystem sys = oscillator();
  std::vector<Vec> out = reference_solution(sys, {1.0, 0.0}, {0.0, 1.0, 2.5});
  REQUIRE(out.size() == 3);
  CHECK(out[1][0] == doctest::Approx(std::cos(1.0)).epsilon(1e-10));
  CHECK(out[1][1] == doctest::Approx(-std::sin(1.0)).epsilon(1e-10));
  CHECK(out[2][0] == doctest::Approx(std::cos(2.5)).epsilon(1e-10));
  CHECK(out[2][1] == doctest::Approx(-std::sin(2.5)).epsilon(1e-10));
}

TEST_CASE("the reference solver rejects bad grids and impossible budgets") {
  SemiDiscreteSystem sys = oscillator();
  CHECK_THROWS(reference_solution(sys, {1.0, 0.0}, {0.0, 1.0, 0.5}));
  CHECK_THROWS(reference_solution(sys, {1.0, 0.0}, {}));

  ReferenceConfig tight;
  tight.max_steps = 3;
  CHECK_THROWS_AS(reference_solution(sys, {1.0, 0.0}, {0.0, 100.0}, tight), NonConvergence);
}

TEST_CASE("a nonconvergent step leaves the completed prefix in the trajectory") {
  Problem heat = build_problem("heat");
  SolveConfig fp;
  fp.method = SolveMethod::FixedPoint;  // diverges at this dt
  Trajectory traj;
  CHECK_THROWS_AS(integrate(heat.system, Scheme::Avf, heat.u0, 1.0, 5, {}, fp, 1, traj),
                  NonConvergence);
  CHECK(traj.states.size() == 1);  // only the initial state survived
  CHECK(traj.times[0] == 0.0);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "avf/diagnostics.hpp"
#include "avf/zoo.hpp"

#include <cmath>

using namespace avf;

namespace {

// A trajectory with prescribed monitor values: states are scalars fed to an
// identity-energy monitor, H = u^2/2, so u = sqrt(2 h) dials in any value.
Trajectory synthetic(const std::vector<double>& h_values) {
  Trajectory traj;
  for (std::size_t k = 0; k < h_values.size(); ++k) {
    traj.times.push_back(double(k));
    traj.states.push_back(Vec{std::sqrt(2.0 * h_values[k])});
  }
  return traj;
}

EnergyMonitor half_square() {
  EnergyMonitor h("H", 1, 1.0);
  h.add_term(std::make_shared<MonomialTerm>(0, 1, 2, 0.5));
  return h;
}

}  // namespace

TEST_CASE("drift reports measure against the initial value in both norms") {
  EnergyMonitor h = half_square();
  Trajectory traj = synthetic({2.0, 2.5, 1.5, 2.0});
  DriftReport rep = energy_drift(h, traj);
  CHECK(rep.initial == doctest::Approx(2.0));
  CHECK(rep.values.size() == 4);
  CHECK(rep.max_abs_drift == doctest::Approx(0.5));
  CHECK(rep.max_rel_drift == doctest::Approx(0.25));
  CHECK(rep.times[3] == 3.0);
}

TEST_CASE("a zero initial value falls back to absolute drift") {
  EnergyMonitor h = half_square();
  Trajectory traj = synthetic({0.0, 0.3});
  DriftReport rep = energy_drift(h, traj);
  CHECK(rep.max_rel_drift == doctest::Approx(0.3));
}

TEST_CASE("drift honors the monitor's volume element") {
  EnergyMonitor h("H", 1, 0.5);
  h.add_term(std::make_shared<MonomialTerm>(0, 1, 2, 0.5));
  Trajectory traj = synthetic({2.0, 2.5});
  DriftReport rep = energy_drift(h, traj);
  CHECK(rep.initial == doctest::Approx(1.0));       // 2.0 * dx_volume
  CHECK(rep.max_abs_drift == doctest::Approx(0.25));
  CHECK(rep.max_rel_drift == doctest::Approx(0.25));  // ratio is volume-free
}

TEST_CASE("monotone decay passes within slack and pinpoints the first violation") {
  EnergyMonitor h = half_square();

  MonotonicityReport ok = monotonicity_verdict(h, synthetic({3.0, 2.0, 2.0, 1.0}));
  CHECK(ok.monotone);
  CHECK(ok.worst_increment <= 0.0);

  // Increments: +0.5 at k=1->2 (index 1), +1.0 at k=3->4 (index 3).
  MonotonicityReport bad = monotonicity_verdict(h, synthetic({3.0, 2.0, 2.5, 2.0, 3.0}));
  CHECK_FALSE(bad.monotone);
  CHECK(bad.first_violation == 1);
  CHECK(bad.first_magnitude == doctest::Approx(0.5));
  CHECK(bad.worst_index == 3);
  CHECK(bad.worst_increment == doctest::Approx(1.0));

  // A generous slack forgives both bumps.
  CHECK(monotonicity_verdict(h, synthetic({3.0, 2.0, 2.5, 2.0, 3.0}), 1.5).monotone);
}

TEST_CASE("the grid norm scales with the volume element and vector length") {
  Vec a(9, 1.0), b(9, 0.0);
  CHECK(global_error(a, b, 1.0) == doctest::Approx(3.0));
  CHECK(global_error(a, b, 0.25) == doctest::Approx(1.5));
  CHECK(global_error(a, a, 0.25) == 0.0);

  // Symmetry and the triangle inequality on random data.
  Vec x = {0.3, -0.7, 1.1}, y = {-0.2, 0.4, 0.9}, z = {1.0, 0.0, -1.0};
  CHECK(global_error(x, y, 0.5) == global_error(y, x, 0.5));
  CHECK(global_error(x, z, 0.5) <= global_error(x, y, 0.5) + global_error(y, z, 0.5) + 1e-15);
  CHECK_THROWS(global_error(x, Vec(2, 0.0), 1.0));
}

TEST_CASE("the averaged-field scheme measures second order on sine-Gordon") {
  Problem sg = build_problem("sine_gordon_fd", {{"n", 24.0}});
  OrderEstimate est = observed_order(sg.system, Scheme::Avf, sg.u0,
                                     {0.1, 0.05, 0.025, 0.0125}, 0.4);
  CHECK(est.order == doctest::Approx(2.0).epsilon(0.1));
  REQUIRE(est.errors.size() == 4);
  CHECK(est.errors[0] > est.errors[3]);                    // dts are processed descending
  CHECK(est.dts[0] == 0.1);
}

TEST_CASE("backward Euler measures first order on the heat equation") {
  Problem heat = build_problem("heat", {{"n", 16.0}});
  OrderEstimate est = observed_order(heat.system, Scheme::BackwardEuler, heat.u0,
                                     {0.02, 0.01, 0.005}, 0.2);
  CHECK(est.order == doctest::Approx(1.0).epsilon(0.2));
}

TEST_CASE("order estimation refuses meaningless fits") {
  Problem heat = build_problem("heat", {{"n", 12.0}});
  // Too few step sizes.
  CHECK_THROWS_AS(observed_order(heat.system, Scheme::Avf, heat.u0, {0.1, 0.05}, 0.2),
                  UnreliableOrderEstimate);
  // A dt that does not divide the horizon.
  CHECK_THROWS_AS(observed_order(heat.system, Scheme::Avf, heat.u0, {0.15, 0.1, 0.05}, 0.2),
                  UnreliableOrderEstimate);
  // Errors at the rounding floor: the exact scheme on its own reference.
  // Midpoint on heat at tiny dt against a tight reference sits near 1e-15.
  Problem tiny = build_problem("heat", {{"n", 4.0}});
  CHECK_THROWS_AS(observed_order(tiny.system, Scheme::Avf, Vec(3, 0.0), {0.02, 0.01, 0.005}, 0.1),
                  UnreliableOrderEstimate);
}

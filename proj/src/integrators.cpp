#include "avf/integrators.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "avf/kernels.hpp"

namespace avf {

std::string_view scheme_name(Scheme s) {
  switch (s) {
    case Scheme::Avf: return "avf";
    case Scheme::Midpoint: return "midpoint";
    case Scheme::BackwardEuler: return "backward_euler";
  }
  return "?";
}

Scheme scheme_from_name(std::string_view name) {
  if (name == "avf") return Scheme::Avf;
  if (name == "midpoint") return Scheme::Midpoint;
  if (name == "backward_euler" || name == "be") return Scheme::BackwardEuler;
  throw std::invalid_argument("unknown scheme '" + std::string(name) +
                              "' (expected avf, midpoint, or backward_euler)");
}

SolveStats midpoint_step(const SemiDiscreteSystem& sys, const Vec& u0, double dt, Vec& u1,
                         const SolveConfig& cfg) {
  std::size_t n = sys.dim();
  Vec mid(n);
  ImplicitProblem p;
  p.op = sys.op.matrix.get();
  p.gradient = [&](const Vec& v, Vec& g) {
    kernels::combine_auto(0.5, u0.data(), 0.5, v.data(), mid.data(), n);
    sys.driver.gradient(mid, g);
  };
  p.gradient_jacobian = [&](const Vec& v, DenseMat& k) {
    kernels::combine_auto(0.5, u0.data(), 0.5, v.data(), mid.data(), n);
    for (const auto& t : sys.driver.terms()) t->add_hessian(mid, k);
    for (double& x : k.a) x *= 0.5;
  };
  return solve_implicit(p, u0, dt, u1, cfg);
}

SolveStats backward_euler_step(const SemiDiscreteSystem& sys, const Vec& u0, double dt, Vec& u1,
                               const SolveConfig& cfg) {
  ImplicitProblem p;
  p.op = sys.op.matrix.get();
  p.gradient = [&](const Vec& v, Vec& g) { sys.driver.gradient(v, g); };
  p.gradient_jacobian = [&](const Vec& v, DenseMat& k) {
    for (const auto& t : sys.driver.terms()) t->add_hessian(v, k);
  };
  return solve_implicit(p, u0, dt, u1, cfg);
}

SolveStats scheme_step(Scheme s, const SemiDiscreteSystem& sys, const Vec& u0, double dt, Vec& u1,
                       const AveragedFieldPlan& plan, const SolveConfig& cfg) {
  switch (s) {
    case Scheme::Avf: return avf_step(sys, u0, dt, u1, plan, cfg);
    case Scheme::Midpoint: return midpoint_step(sys, u0, dt, u1, cfg);
    case Scheme::BackwardEuler: return backward_euler_step(sys, u0, dt, u1, cfg);
  }
  throw std::logic_error("unreachable scheme");
}

void integrate(const SemiDiscreteSystem& sys, Scheme scheme, const Vec& u0, double dt, long steps,
               const AveragedFieldPlan& plan, const SolveConfig& cfg, long record_every,
               Trajectory& out) {
  if (steps < 1) throw std::invalid_argument("step count must be >= 1");
  if (record_every < 1) throw std::invalid_argument("record_every must be >= 1");
  out.times.clear();
  out.states.clear();
  out.solver.clear();
  out.times.push_back(0.0);
  out.states.push_back(u0);

  Vec u = u0, next;
  for (long k = 1; k <= steps; ++k) {
    SolveStats st = scheme_step(scheme, sys, u, dt, next, plan, cfg);
    out.solver.push_back(st);
    u.swap(next);
    if (k % record_every == 0 || k == steps) {
      out.times.push_back(double(k) * dt);
      out.states.push_back(u);
    }
  }
}

// ---------------------------------------------------------------------------
// Dormand-Prince 5(4)

namespace {

constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
// Difference between the 5th- and 4th-order weights (error estimator).
constexpr double e1 = b1 - 5179.0 / 57600, e3 = b3 - 7571.0 / 16695, e4 = b4 - 393.0 / 640,
                 e5 = b5 + 92097.0 / 339200, e6 = b6 - 187.0 / 2100, e7 = -1.0 / 40;

}  // namespace

std::vector<Vec> reference_solution(const SemiDiscreteSystem& sys, const Vec& u0,
                                    const Vec& t_grid, const ReferenceConfig& cfg) {
  if (t_grid.empty()) throw std::invalid_argument("reference needs at least one grid time");
  for (std::size_t i = 1; i < t_grid.size(); ++i)
    if (!(t_grid[i] > t_grid[i - 1]))
      throw std::invalid_argument("reference grid times must be strictly increasing");

  std::size_t n = sys.dim();
  std::vector<Vec> out;
  out.reserve(t_grid.size());
  out.push_back(u0);
  if (t_grid.size() == 1) return out;

  Vec y = u0, ynew(n), yerr(n), stage(n), grad;
  std::array<Vec, 7> k;
  for (auto& ki : k) ki.resize(n);

  auto field = [&](const Vec& v, Vec& f) { sys.eval_vector_field(v, grad, f); };

  double t = t_grid.front();
  field(y, k[0]);
  double h = std::min((t_grid[1] - t) / 16.0, 1e-2);
  long taken = 0;

  for (std::size_t gi = 1; gi < t_grid.size(); ++gi) {
    double t_target = t_grid[gi];
    while (t < t_target) {
      // Clip the trial step to land on the grid time exactly, without
      // shrinking the persistent step size for later intervals.
      double hs = std::min(h, t_target - t);
      bool clipped = hs < h;
      if (++taken > cfg.max_steps)
        throw NonConvergence("reference integration exceeded its step budget", int(taken), h);

      auto blend = [&](std::initializer_list<std::pair<double, const Vec*>> parts) {
        stage = y;
        for (auto [c, v] : parts) kernels::axpy_auto(hs * c, v->data(), stage.data(), n);
      };
      blend({{a21, &k[0]}});
      field(stage, k[1]);
      blend({{a31, &k[0]}, {a32, &k[1]}});
      field(stage, k[2]);
      blend({{a41, &k[0]}, {a42, &k[1]}, {a43, &k[2]}});
      field(stage, k[3]);
      blend({{a51, &k[0]}, {a52, &k[1]}, {a53, &k[2]}, {a54, &k[3]}});
      field(stage, k[4]);
      blend({{a61, &k[0]}, {a62, &k[1]}, {a63, &k[2]}, {a64, &k[3]}, {a65, &k[4]}});
      field(stage, k[5]);
      // 5th-order solution; its field value doubles as the last stage.
      ynew = y;
      for (auto [c, ki] : {std::pair{b1, 0}, {b3, 2}, {b4, 3}, {b5, 4}, {b6, 5}})
        kernels::axpy_auto(hs * c, k[std::size_t(ki)].data(), ynew.data(), n);
      field(ynew, k[6]);
      for (std::size_t i = 0; i < n; ++i)
        yerr[i] = hs * (e1 * k[0][i] + e3 * k[2][i] + e4 * k[3][i] + e5 * k[4][i] + e6 * k[5][i] +
                        e7 * k[6][i]);

      // Weighted RMS error against the tolerance envelope.
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        double w = cfg.atol + cfg.rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
        double q = yerr[i] / w;
        acc += q * q;
      }
      double err = std::sqrt(acc / double(n));

      if (!std::isfinite(err)) {
        h = 0.25 * hs;
        continue;
      }
      double factor = std::clamp(0.9 * std::pow(std::max(err, 1e-16), -0.2), 0.2, 5.0);
      if (err <= 1.0) {
        t = clipped ? t_target : t + hs;
        y.swap(ynew);
        k[0].swap(k[6]);  // first-same-as-last
        if (!clipped) h = hs * factor;
      } else {
        h = hs * std::min(factor, 0.9);
      }
    }
    out.push_back(y);
  }
  return out;
}

}  // namespace avf

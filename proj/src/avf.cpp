#include "avf/avf.hpp"

#include <Eigen/Core>
#include <Eigen/LU>
#include <cmath>
#include <sstream>

#include "avf/kernels.hpp"
#include "avf/quadrature.hpp"

namespace avf {

double trig_difference_quotient(double a, double b) {
  // (cos b - cos a)/(b - a) = -sin((a+b)/2) * sinc((b-a)/2), which is exact
  // and cancellation-free for any spacing of a and b.
  return -std::sin(0.5 * (a + b)) * kernels::sinc(0.5 * (b - a));
}

AveragedFieldPlan AveragedFieldPlan::quadrature(int m) {
  if (m < 1) throw std::invalid_argument("quadrature plan needs >= 1 Gauss point");
  AveragedFieldPlan p;
  p.gauss_override = m;
  return p;
}

void averaged_gradient(const EnergyMonitor& h, const Vec& u0, const Vec& u1,
                       const AveragedFieldPlan& plan, Vec& g) {
  h.check_dim(u0);
  h.check_dim(u1);
  g.assign(h.dim(), 0.0);
  if (plan.gauss_override == 0) {
    for (const auto& t : h.terms()) t->add_segment_gradient(u0, u1, g);
    return;
  }
  // Independent path: sample the assembled gradient along the segment.
  QuadratureRule rule = gauss_legendre_01(plan.gauss_override);
  std::size_t n = h.dim();
  Vec point(n), gq;
  for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
    kernels::combine_auto(1.0 - rule.nodes[q], u0.data(), rule.nodes[q], u1.data(), point.data(), n);
    h.gradient(point, gq);
    kernels::axpy_auto(rule.weights[q], gq.data(), g.data(), n);
  }
}

void averaged_field(const SemiDiscreteSystem& sys, const Vec& u0, const Vec& u1,
                    const AveragedFieldPlan& plan, Vec& f) {
  Vec g;
  averaged_gradient(sys.driver, u0, u1, plan, g);
  f.resize(sys.dim());
  sys.op.matrix->apply(g, f);
}

std::string describe_plan(const EnergyMonitor& h, const AveragedFieldPlan& plan) {
  std::ostringstream os;
  if (plan.gauss_override > 0) {
    os << "all terms: gauss(" << plan.gauss_override << ") on the assembled gradient";
    return os.str();
  }
  bool first = true;
  for (const auto& t : h.terms()) {
    if (!first) os << "; ";
    os << t->describe();
    first = false;
  }
  return os.str();
}

NonConvergence::NonConvergence(const std::string& context, int iterations_, double residual_)
    : std::runtime_error(context + ": no convergence after " + std::to_string(iterations_) +
                         " iterations (residual " + std::to_string(residual_) + ")"),
      iterations(iterations_),
      residual(residual_) {}

namespace {

// j += factor * S * K, walking the nonzeros of S so the cost is
// nnz(S) * dim instead of dim^3.
void add_operator_product(const Matrix& s, const DenseMat& k, double factor, DenseMat& j) {
  s.for_each_entry([&](std::size_t row, std::size_t mid, double v) {
    const double* krow = &k.a[mid * k.cols];
    double* jrow = &j.a[row * j.cols];
    double c = factor * v;
    for (std::size_t col = 0; col < k.cols; ++col) jrow[col] += c * krow[col];
  });
}

// r = base + dt * S * g(v) - v; returns the max norm.
double residual(const ImplicitProblem& p, const Vec& base, double dt, const Vec& v,
                Vec& g_scratch, Vec& f_scratch, Vec& r) {
  std::size_t n = base.size();
  p.gradient(v, g_scratch);
  f_scratch.resize(n);
  p.op->apply(g_scratch, f_scratch);
  r.resize(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = base[i] + dt * f_scratch[i] - v[i];
  return kernels::max_abs(r.data(), n);
}

}  // namespace

SolveStats solve_implicit(const ImplicitProblem& p, const Vec& base, double dt, Vec& v,
                          const SolveConfig& cfg) {
  if (!p.op || !p.gradient) throw std::invalid_argument("implicit problem is missing pieces");
  if (!std::isfinite(dt) || dt == 0.0) throw std::invalid_argument("step size must be finite and nonzero");
  std::size_t n = base.size();
  bool newton = cfg.method == SolveMethod::Newton;
  if (newton && !p.gradient_jacobian)
    throw std::invalid_argument("Newton needs a gradient Jacobian; use the fixed-point method");
  if (newton && n > newton_dense_limit)
    throw std::invalid_argument("state dimension " + std::to_string(n) +
                                " exceeds the dense Newton limit; use the fixed-point method");

  Vec g, f, r;
  // Explicit-Euler predictor.
  double nr = residual(p, base, dt, base, g, f, r);
  v = base;
  kernels::axpy_auto(1.0, r.data(), v.data(), n);

  SolveStats stats;
  DenseMat k(0, 0), j(0, 0);
  Eigen::PartialPivLU<Eigen::MatrixXd> lu;
  double prev_nr = 0.0;
  bool have_jacobian = false;

  for (;;) {
    nr = residual(p, base, dt, v, g, f, r);
    if (!std::isfinite(nr)) throw NonConvergence("iteration left the reals", stats.iterations, nr);
    stats.residual = nr;
    if (nr <= cfg.tol) return stats;
    if (stats.iterations >= cfg.max_iter)
      throw NonConvergence("implicit solve", stats.iterations, nr);

    if (newton) {
      // Rebuild the (frozen) Jacobian when convergence degrades; the first
      // build happens at the predictor.
      bool slow = have_jacobian && stats.iterations > 0 && nr > 0.5 * prev_nr;
      if (!have_jacobian || slow) {
        if (k.rows != n) {
          k = DenseMat(n, n);
          j = DenseMat(n, n);
        }
        k.zero();
        p.gradient_jacobian(v, k);
        j.zero();
        for (std::size_t i = 0; i < n; ++i) j.at(i, i) = 1.0;
        add_operator_product(*p.op, k, -dt, j);
        Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
            jm(j.a.data(), n, n);
        lu.compute(jm);
        have_jacobian = true;
        ++stats.jacobian_builds;
      }
      Eigen::Map<const Eigen::VectorXd> rm(r.data(), n);
      Eigen::VectorXd delta = lu.solve(rm);
      for (std::size_t i = 0; i < n; ++i) v[i] += delta[i];
    } else {
      kernels::axpy_auto(1.0, r.data(), v.data(), n);
    }
    prev_nr = nr;
    ++stats.iterations;
  }
}

SolveStats avf_step(const SemiDiscreteSystem& sys, const Vec& u0, double dt, Vec& u1,
                    const AveragedFieldPlan& plan, const SolveConfig& cfg) {
  if (u0.size() != sys.dim())
    throw std::invalid_argument("state size does not match system dimension");
  ImplicitProblem p;
  p.op = sys.op.matrix.get();
  p.gradient = [&](const Vec& v, Vec& g) { averaged_gradient(sys.driver, u0, v, plan, g); };
  if (plan.gauss_override == 0) {
    p.gradient_jacobian = [&](const Vec& v, DenseMat& k) {
      for (const auto& t : sys.driver.terms()) t->add_segment_jacobian(u0, v, k);
    };
  }
  return solve_implicit(p, u0, dt, u1, cfg);
}

}  // namespace avf

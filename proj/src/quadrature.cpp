#include "avf/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace avf {

void legendre_eval(unsigned p, double x, double& value, double& derivative) {
  double pm1 = 1.0, pm = x;
  if (p == 0) {
    value = 1.0;
    derivative = 0.0;
    return;
  }
  for (unsigned k = 2; k <= p; ++k) {
    const double pk = ((2.0 * k - 1.0) * x * pm - (k - 1.0) * pm1) / k;
    pm1 = pm;
    pm = pk;
  }
  value = pm;
  // (1-x^2) P'_p = p (P_{p-1} - x P_p)
  if (std::fabs(x) < 1.0)
    derivative = p * (pm1 - x * pm) / (1.0 - x * x);
  else  // P'_p(1) = p(p+1)/2, P'_p(-1) = (-1)^(p-1) p(p+1)/2
    derivative = (x > 0 ? 1.0 : (p % 2 ? 1.0 : -1.0)) * p * (p + 1.0) / 2.0;
}

QuadratureRule gauss_legendre_01(std::size_t m) {
  if (m == 0) throw std::invalid_argument("quadrature rule needs at least one point");
  QuadratureRule r;
  r.nodes.resize(m);
  r.weights.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    // Standard asymptotic initial guess for the i-th root of P_m.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
    double v = 0.0, d = 1.0;
    for (int it = 0; it < 100; ++it) {
      legendre_eval(static_cast<unsigned>(m), x, v, d);
      const double dx = v / d;
      x -= dx;
      if (std::fabs(dx) < 1e-15) break;
    }
    legendre_eval(static_cast<unsigned>(m), x, v, d);
    const double w = 2.0 / ((1.0 - x * x) * d * d);
    // Map [-1,1] -> [0,1]; reverse so nodes come out increasing.
    r.nodes[m - 1 - i] = 0.5 * (x + 1.0);
    r.weights[m - 1 - i] = 0.5 * w;
  }
  return r;
}

}  // namespace avf

#include "avf/operators.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "avf/quadrature.hpp"

namespace avf {

Matrix fd_operator(FdKind kind, std::size_t n, double dx) {
  if (n < 3) throw std::invalid_argument("fd_operator: need n >= 3");
  if (!(dx > 0.0)) throw std::invalid_argument("fd_operator: need dx > 0");
  switch (kind) {
    case FdKind::PeriodicLaplacian:
      return Matrix::circulant(n, {{-1, 1.0}, {0, -2.0}, {1, 1.0}}, 1.0 / (dx * dx));
    case FdKind::PeriodicFirst:
      return Matrix::circulant(n, {{-1, -1.0}, {1, 1.0}}, 1.0 / (2.0 * dx));
    case FdKind::DirichletLaplacian:
      return Matrix::banded(n, {{-1, 1.0}, {0, -2.0}, {1, 1.0}}, 1.0 / (dx * dx));
    case FdKind::DirichletFirst:
      return Matrix::banded(n, {{-1, -1.0}, {1, 1.0}}, 1.0 / (2.0 * dx));
    case FdKind::Maxwell1dG: {
      // Rows are field nodes 1..N-1, columns are flux nodes 0..N.  Interior
      // rows are plain central differences; the first and last rows double
      // the boundary coupling, which combines with the halved boundary
      // weights in the energy to reproduce central differences there too.
      const std::size_t N = n;
      std::vector<Triplet> t;
      for (std::size_t j = 1; j <= N - 1; ++j) {
        const std::size_t row = j - 1;
        const double left = (j == 1) ? -2.0 : -1.0;
        const double right = (j == N - 1) ? 2.0 : 1.0;
        t.push_back({row, j - 1, left});
        t.push_back({row, j + 1, right});
      }
      return Matrix::sparse(N - 1, N + 1, t, 1.0 / (2.0 * dx));
    }
  }
  throw std::logic_error("fd_operator: unknown kind");
}

GllBasis gll_basis(unsigned p) {
  if (p < 1) throw std::invalid_argument("gll_basis: need degree >= 1");
  GllBasis b;
  b.degree = p;
  b.nodes.assign(p + 1, 0.0);
  b.nodes[0] = -1.0;
  b.nodes[p] = 1.0;

  // Interior nodes: roots of P'_p by Newton from Chebyshev-Lobatto guesses,
  // using (1-x^2) P''_p = 2x P'_p - p(p+1) P_p for the update.
  for (unsigned j = 1; j < p; ++j) {
    double x = -std::cos(std::numbers::pi * j / p);
    for (int it = 0; it < 100; ++it) {
      double v, d;
      legendre_eval(p, x, v, d);
      const double dd = (2.0 * x * d - p * (p + 1.0) * v) / (1.0 - x * x);
      const double dx = d / dd;
      x -= dx;
      if (std::fabs(dx) < 1e-14) break;
    }
    b.nodes[j] = x;
  }
  // Enforce the odd-degree center node exactly.
  if (p % 2 == 0) b.nodes[p / 2] = 0.0;

  b.weights.assign(p + 1, 0.0);
  Vec pp(p + 1);
  for (unsigned j = 0; j <= p; ++j) {
    double v, d;
    legendre_eval(p, b.nodes[j], v, d);
    pp[j] = v;
    b.weights[j] = 2.0 / (p * (p + 1.0) * v * v);
  }

  b.diff = DenseMat(p + 1, p + 1);
  for (unsigned j = 0; j <= p; ++j)
    for (unsigned k = 0; k <= p; ++k) {
      if (j == k) {
        if (j == 0)
          b.diff.at(j, k) = -(p * (p + 1.0)) / 4.0;
        else if (j == p)
          b.diff.at(j, k) = p * (p + 1.0) / 4.0;
        else
          b.diff.at(j, k) = 0.0;
      } else {
        b.diff.at(j, k) = pp[j] / (pp[k] * (b.nodes[j] - b.nodes[k]));
      }
    }
  return b;
}

Matrix curl_matrix_3d(std::size_t n, double dx) {
  if (n < 3) throw std::invalid_argument("curl_matrix_3d: need n >= 3");
  const std::size_t n3 = n * n * n;
  auto idx = [n](std::size_t i, std::size_t j, std::size_t k) { return (i * n + j) * n + k; };
  auto wrap = [n](std::ptrdiff_t i) {
    if (i < 0) return static_cast<std::size_t>(i + static_cast<std::ptrdiff_t>(n));
    if (i >= static_cast<std::ptrdiff_t>(n)) return static_cast<std::size_t>(i - static_cast<std::ptrdiff_t>(n));
    return static_cast<std::size_t>(i);
  };

  std::vector<Triplet> t;
  t.reserve(12 * n3);
  // Block (r, c, axis, sign): sign * D_axis placed at block row r, column c.
  struct BlockSpec {
    int r, c, axis;
    double sign;
  };
  const BlockSpec blocks[] = {
      {0, 1, 2, -1.0}, {0, 2, 1, 1.0},   // row 1: -Dz v2 + Dy v3
      {1, 0, 2, 1.0},  {1, 2, 0, -1.0},  // row 2:  Dz v1 - Dx v3
      {2, 0, 1, -1.0}, {2, 1, 0, 1.0},   // row 3: -Dy v1 + Dx v2
  };
  for (const auto& bs : blocks) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          const std::size_t row = bs.r * n3 + idx(i, j, k);
          std::size_t up, dn;
          if (bs.axis == 0) {
            up = idx(wrap(static_cast<std::ptrdiff_t>(i) + 1), j, k);
            dn = idx(wrap(static_cast<std::ptrdiff_t>(i) - 1), j, k);
          } else if (bs.axis == 1) {
            up = idx(i, wrap(static_cast<std::ptrdiff_t>(j) + 1), k);
            dn = idx(i, wrap(static_cast<std::ptrdiff_t>(j) - 1), k);
          } else {
            up = idx(i, j, wrap(static_cast<std::ptrdiff_t>(k) + 1));
            dn = idx(i, j, wrap(static_cast<std::ptrdiff_t>(k) - 1));
          }
          t.push_back({row, bs.c * n3 + up, bs.sign});
          t.push_back({row, bs.c * n3 + dn, -bs.sign});
        }
  }
  return Matrix::sparse(3 * n3, 3 * n3, t, 1.0 / (2.0 * dx));
}

}  // namespace avf

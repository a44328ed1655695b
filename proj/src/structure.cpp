#include "avf/structure.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

namespace avf {

namespace {

// Exact skew test for constant stencils: the transpose negates offsets, so
// M = -M' iff every coefficient satisfies c(-k) = -c(k) (diagonal zero).
bool stencil_exactly_skew(const Matrix& m, double& worst) {
  std::map<int, double> c;
  for (const auto& [off, v] : m.stencil()) c[off] += v;
  worst = 0.0;
  for (const auto& [off, v] : c) {
    const auto it = c.find(-off);
    const double mirror = it == c.end() ? 0.0 : it->second;
    worst = std::max(worst, std::fabs(v + mirror) * std::fabs(m.scale()));
  }
  return worst == 0.0;
}

// Symmetry defect max|M + M'| for matrices we can enumerate.  Works off the
// entry stream; transform storage falls back to its dense form.
double symmetry_defect(const Matrix& m) {
  std::map<std::pair<std::size_t, std::size_t>, double> entries;
  m.for_each_entry([&](std::size_t i, std::size_t j, double v) { entries[{i, j}] += v; });
  double worst = 0.0;
  for (const auto& [ij, v] : entries) {
    const auto it = entries.find({ij.second, ij.first});
    const double mirror = it == entries.end() ? 0.0 : it->second;
    worst = std::max(worst, std::fabs(v + mirror));
  }
  return worst;
}

double probe_uniform(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) * 0x1.0p-53) * 2.0 - 1.0;
}

}  // namespace

StructureReport check_structure(const StructureOperator& op) {
  const Matrix& m = *op.matrix;
  StructureReport rep;
  std::ostringstream msg;

  if (m.rows() != m.cols()) {
    rep.pass = false;
    rep.diagnostic = "operator is not square";
    return rep;
  }

  if (op.cls == MatrixClass::Skew) {
    const double maxent = m.max_abs_entry();
    if (m.storage() == Storage::Banded || m.storage() == Storage::Circulant) {
      rep.pass = stencil_exactly_skew(m, rep.worst);
      msg << "stencil skew defect " << rep.worst;
    } else {
      rep.worst = symmetry_defect(m);
      // Integer-valued constructions (all entries whole multiples of the
      // scale) must cancel exactly; anything else gets a roundoff allowance.
      bool integral = true;
      m.for_each_entry([&](std::size_t, std::size_t, double v) {
        const double q = v / (m.scale() == 0.0 ? 1.0 : m.scale());
        if (std::fabs(q - std::round(q)) > 0.0) integral = false;
      });
      const double tol = integral ? 0.0 : 1e-14 * maxent;
      rep.pass = rep.worst <= tol;
      msg << "symmetry defect max|M+M'| = " << rep.worst << " (allowed " << tol << ")";
    }
  } else {
    // Probe x'Mx; also valid for non-symmetric operators, where only the
    // symmetric part contributes.
    const double maxent = m.max_abs_entry();
    std::mt19937_64 rng(2026);
    Vec x(m.cols()), y(m.rows());
    double worst = -1e300;
    rep.pass = true;
    for (int p = 0; p < 128; ++p) {
      for (auto& v : x) v = probe_uniform(rng);
      m.apply(x, y);
      const double q = dot(x, y);
      const double allowed = 1e-12 * dot(x, x) * maxent;
      worst = std::max(worst, q);
      if (q > allowed) rep.pass = false;
    }
    rep.worst = worst;
    msg << "max probe x'Mx = " << worst << " over 128 probes";
  }

  rep.diagnostic = msg.str();
  return rep;
}

}  // namespace avf

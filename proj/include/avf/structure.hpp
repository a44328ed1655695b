#pragma once
// A structure operator is the constant matrix multiplying the energy
// gradient in the semi-discrete system, together with its declared
// algebraic class: skew-symmetric (conservative systems) or negative
// semidefinite (dissipative ones).  check_structure verifies the claim.

#include <memory>
#include <string>

#include "avf/matrix.hpp"

namespace avf {

enum class MatrixClass { Skew, NegativeSemidefinite };

struct StructureOperator {
  std::shared_ptr<const Matrix> matrix;
  MatrixClass cls = MatrixClass::Skew;

  std::size_t dim() const { return matrix->rows(); }
  double scale() const { return matrix->scale(); }
};

struct StructureReport {
  bool pass = false;
  double worst = 0.0;       // worst symmetry defect or probe quotient seen
  std::string diagnostic;   // human-readable summary
};

// Skew: max|M + M'| must vanish — exactly for integer stencil constructions,
// within 1e-14 * max|M| otherwise.  Negative semidefinite: x'Mx <= tol on at
// least 100 seeded random probes with tol = 1e-12 * |x|^2 * max|M|.
StructureReport check_structure(const StructureOperator& op);

}  // namespace avf

#pragma once
// Gauss-Legendre rules.  The averaging strategies use small rules chosen per
// polynomial degree; the test oracle uses a 64-point rule.

#include <cstddef>

#include "avf/vec.hpp"

namespace avf {

struct QuadratureRule {
  Vec nodes, weights;  // on [0,1], weights summing to 1
};

// m-point Gauss-Legendre rule mapped to [0,1]; exact for polynomials of
// degree <= 2m-1.  Nodes found by Newton iteration on the Legendre
// polynomial, converged to 1e-15.
QuadratureRule gauss_legendre_01(std::size_t m);

// Legendre polynomial value and derivative at x (helper shared with the
// Lobatto node construction).
void legendre_eval(unsigned p, double x, double& value, double& derivative);

}  // namespace avf

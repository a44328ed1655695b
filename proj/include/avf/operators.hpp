#pragma once
// Discrete space operators: constant-coefficient finite-difference stencils,
// the Fourier collocation derivative, Gauss-Lobatto-Legendre (GLL) nodal
// data for the 2D wave problem, and the periodic 3D curl block matrix.

#include <memory>

#include "avf/matrix.hpp"

namespace avf {

enum class FdKind {
  PeriodicLaplacian,   // circulant (1,-2,1)/dx^2
  PeriodicFirst,       // circulant (-1,0,1)/(2 dx), +1 on the superdiagonal
  DirichletLaplacian,  // tridiagonal (1,-2,1)/dx^2 on n interior nodes
  DirichletFirst,      // tridiagonal (-1,0,1)/(2 dx) on n interior nodes
  Maxwell1dG,          // (N-1) x (N+1) central difference with doubled end
                       // couplings; n is the cell count N here
};

// For the square kinds, n is the matrix dimension.  Stencil coefficients are
// stored as integers with the 1/dx powers in the matrix scale.
Matrix fd_operator(FdKind kind, std::size_t n, double dx);

// Nodes, quadrature weights and the differentiation matrix of the degree-p
// GLL basis on [-1,1].  Nodes are the roots of (1-x^2) P'_p, found by Newton
// iteration from Chebyshev-Lobatto starting points, converged to 1e-14;
// weights are 2 / (p (p+1) P_p(x_j)^2).
struct GllBasis {
  unsigned degree = 0;
  Vec nodes;      // p+1, increasing, endpoints exactly -1 and 1
  Vec weights;
  DenseMat diff;  // d(j,k) = derivative of the k-th cardinal function at node j
};

GllBasis gll_basis(unsigned p);

// Symmetric block matrix realizing the curl on a periodic N^3 grid with
// central differences: components are stacked lexicographically, node
// (i,j,k) at linear index (i*N + j)*N + k within each component block.
Matrix curl_matrix_3d(std::size_t n, double dx);

// Fourier collocation derivative on N periodic nodes over a length-l
// interval.  Applied through real-to-complex FFTs; the dense realized form
// is materialized once for tests and Jacobian assembly.  The Nyquist mode of
// even N carries wavenumber zero.
class SpectralDerivative {
 public:
  SpectralDerivative(std::size_t n, double length);
  ~SpectralDerivative();
  SpectralDerivative(const SpectralDerivative&) = delete;
  SpectralDerivative& operator=(const SpectralDerivative&) = delete;

  std::size_t size() const { return n_; }
  double length() const { return l_; }

  // Scaled wavenumbers in DFT index order.
  const Vec& wavenumbers() const { return kappa_; }

  void apply(const double* x, double* y) const;            // y = D x
  void apply_transpose(const double* x, double* y) const;  // y = D' x = -D x

  // Realized dense N x N form (computed once, column by column), and the
  // same for the Gram operator D'D built by the two-pass application.
  const Vec& dense() const;
  const Vec& gram_dense() const;

 private:
  struct Fft;
  std::size_t n_;
  double l_;
  Vec kappa_;
  std::unique_ptr<Fft> fft_;
  mutable Vec dense_;
  mutable Vec gram_dense_;
};

std::shared_ptr<SpectralDerivative> spectral_derivative_operator(std::size_t n, double length);

// The derivative and its Gram operator D'D wrapped as matrices (Transform
// storage with the dense form attached; the wrapper keeps the derivative
// alive).
std::shared_ptr<const Matrix> spectral_as_matrix(std::shared_ptr<const SpectralDerivative> d);
std::shared_ptr<const Matrix> spectral_gram_matrix(std::shared_ptr<const SpectralDerivative> d);

}  // namespace avf

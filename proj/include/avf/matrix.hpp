#pragma once
// Immutable real matrices in the handful of storage forms the workbench
// needs: dense row-major, constant-diagonal bands (clipped at the edges),
// circulant stencils (wrapped), general CSR sparse, and transform-backed
// operators that only exist as apply callbacks (the FFT derivative).  A
// separate multiplicative scale keeps stencil coefficients exactly integer
// where the construction is integer, which the structure checks rely on.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "avf/vec.hpp"

namespace avf {

enum class Storage { Dense, Banded, Circulant, Sparse, Transform };

struct Triplet {
  std::size_t row, col;
  double value;
};

class Matrix {
 public:
  using ApplyFn = std::function<void(const double*, double*)>;

  static Matrix dense(std::size_t rows, std::size_t cols, Vec values, double scale = 1.0);
  static Matrix banded(std::size_t n, std::vector<std::pair<int, double>> stencil, double scale = 1.0);
  static Matrix circulant(std::size_t n, std::vector<std::pair<int, double>> stencil, double scale = 1.0);
  static Matrix sparse(std::size_t rows, std::size_t cols, const std::vector<Triplet>& entries,
                       double scale = 1.0);
  static Matrix identity(std::size_t n, double scale = 1.0);
  static Matrix diagonal(Vec d, double scale = 1.0);
  // Transform-backed operator; `dense_form` is the materialized matrix used
  // for Jacobian assembly and structure tests (empty to disallow).
  static Matrix transform(std::size_t rows, std::size_t cols, ApplyFn apply, ApplyFn apply_transpose,
                          Vec dense_form, double scale = 1.0);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double scale() const { return scale_; }
  Storage storage() const { return storage_; }

  void apply(std::span<const double> x, std::span<double> y) const;            // y = s*M*x
  void apply_transpose(std::span<const double> x, std::span<double> y) const;  // y = s*M'*x
  Vec apply(const Vec& x) const;
  Vec apply_transpose(const Vec& x) const;

  // Row-major rows*cols copy with the scale folded in.
  Vec to_dense() const;

  // Visit every structurally nonzero entry as (row, col, scaled value).
  void for_each_entry(const std::function<void(std::size_t, std::size_t, double)>& fn) const;

  // Largest |entry| including the scale (estimated from probes for
  // transform storage without a dense form).
  double max_abs_entry() const;

  // Stencil introspection for the exact skew test; empty unless
  // storage is Banded or Circulant.
  const std::vector<std::pair<int, double>>& stencil() const { return stencil_; }

 private:
  Matrix() = default;

  Storage storage_ = Storage::Dense;
  std::size_t rows_ = 0, cols_ = 0;
  double scale_ = 1.0;

  Vec dense_;                                     // Dense; also cached Transform form
  std::vector<std::pair<int, double>> stencil_;   // Banded / Circulant
  std::vector<std::size_t> rowptr_;               // Sparse
  std::vector<std::uint32_t> colidx_;
  Vec values_;
  ApplyFn apply_fn_, apply_t_fn_;                 // Transform

  void check_apply_dims(std::size_t nx, std::size_t ny, bool transposed) const;
};

// Accumulates blocks of existing matrices into one sparse matrix; used to
// assemble the two-by-two block structure operators and block-diagonal
// energy forms.
class BlockBuilder {
 public:
  BlockBuilder(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

  void add(std::size_t row0, std::size_t col0, const Matrix& m, double factor = 1.0);
  void add_transposed(std::size_t row0, std::size_t col0, const Matrix& m, double factor = 1.0);
  void add_identity(std::size_t row0, std::size_t col0, std::size_t n, double factor = 1.0);
  void add_entry(std::size_t row, std::size_t col, double value);

  Matrix build(double scale = 1.0) const;

 private:
  std::size_t rows_, cols_;
  std::vector<Triplet> entries_;
};

// Small row-major dense matrix used for Jacobians and Hessian assembly.
struct DenseMat {
  std::size_t rows = 0, cols = 0;
  Vec a;

  DenseMat() = default;
  DenseMat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0.0) {}
  double& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  double at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
  void zero() { std::fill(a.begin(), a.end(), 0.0); }
};

}  // namespace avf

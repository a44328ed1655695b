#include "avf/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "avf/kernels.hpp"

namespace avf {

double dot(const Vec& x, const Vec& y) { return kernels::dot(x.data(), y.data(), x.size()); }
double norm_inf(const Vec& x) { return kernels::max_abs(x.data(), x.size()); }
double norm2(const Vec& x) { return std::sqrt(kernels::dot(x.data(), x.data(), x.size())); }

Vec operator+(const Vec& x, const Vec& y) {
  Vec r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] + y[i];
  return r;
}

Vec operator-(const Vec& x, const Vec& y) {
  Vec r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] - y[i];
  return r;
}

Vec operator*(double a, const Vec& x) {
  Vec r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = a * x[i];
  return r;
}

bool all_finite(const Vec& x) {
  for (double v : x)
    if (!std::isfinite(v)) return false;
  return true;
}

Matrix Matrix::dense(std::size_t rows, std::size_t cols, Vec values, double scale) {
  if (values.size() != rows * cols) throw std::invalid_argument("dense matrix: value count mismatch");
  Matrix m;
  m.storage_ = Storage::Dense;
  m.rows_ = rows;
  m.cols_ = cols;
  m.scale_ = scale;
  m.dense_ = std::move(values);
  return m;
}

Matrix Matrix::banded(std::size_t n, std::vector<std::pair<int, double>> stencil, double scale) {
  Matrix m;
  m.storage_ = Storage::Banded;
  m.rows_ = m.cols_ = n;
  m.scale_ = scale;
  m.stencil_ = std::move(stencil);
  return m;
}

Matrix Matrix::circulant(std::size_t n, std::vector<std::pair<int, double>> stencil, double scale) {
  Matrix m;
  m.storage_ = Storage::Circulant;
  m.rows_ = m.cols_ = n;
  m.scale_ = scale;
  m.stencil_ = std::move(stencil);
  return m;
}

Matrix Matrix::sparse(std::size_t rows, std::size_t cols, const std::vector<Triplet>& entries,
                      double scale) {
  Matrix m;
  m.storage_ = Storage::Sparse;
  m.rows_ = rows;
  m.cols_ = cols;
  m.scale_ = scale;

  // Sort by (row, col), merging duplicates.
  std::vector<Triplet> sorted = entries;
  std::sort(sorted.begin(), sorted.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  m.rowptr_.assign(rows + 1, 0);
  for (std::size_t k = 0; k < sorted.size();) {
    std::size_t j = k + 1;
    double v = sorted[k].value;
    while (j < sorted.size() && sorted[j].row == sorted[k].row && sorted[j].col == sorted[k].col)
      v += sorted[j++].value;
    if (sorted[k].row >= rows || sorted[k].col >= cols)
      throw std::invalid_argument("sparse matrix: entry out of range");
    m.rowptr_[sorted[k].row + 1]++;
    m.colidx_.push_back(static_cast<std::uint32_t>(sorted[k].col));
    m.values_.push_back(v);
    k = j;
  }
  for (std::size_t i = 0; i < rows; ++i) m.rowptr_[i + 1] += m.rowptr_[i];
  return m;
}

Matrix Matrix::identity(std::size_t n, double scale) { return banded(n, {{0, 1.0}}, scale); }

Matrix Matrix::diagonal(Vec d, double scale) {
  std::vector<Triplet> t;
  t.reserve(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) t.push_back({i, i, d[i]});
  return sparse(d.size(), d.size(), t, scale);
}

Matrix Matrix::transform(std::size_t rows, std::size_t cols, ApplyFn apply, ApplyFn apply_transpose,
                         Vec dense_form, double scale) {
  if (!dense_form.empty() && dense_form.size() != rows * cols)
    throw std::invalid_argument("transform matrix: dense form size mismatch");
  Matrix m;
  m.storage_ = Storage::Transform;
  m.rows_ = rows;
  m.cols_ = cols;
  m.scale_ = scale;
  m.apply_fn_ = std::move(apply);
  m.apply_t_fn_ = std::move(apply_transpose);
  m.dense_ = std::move(dense_form);
  return m;
}

void Matrix::check_apply_dims(std::size_t nx, std::size_t ny, bool transposed) const {
  const std::size_t in = transposed ? rows_ : cols_;
  const std::size_t out = transposed ? cols_ : rows_;
  if (nx != in || ny != out) throw std::invalid_argument("matrix apply: dimension mismatch");
}

void Matrix::apply(std::span<const double> x, std::span<double> y) const {
  check_apply_dims(x.size(), y.size(), false);
  switch (storage_) {
    case Storage::Dense:
      kernels::dense_gemv_auto(dense_.data(), rows_, cols_, scale_, x.data(), y.data());
      break;
    case Storage::Banded:
    case Storage::Circulant: {
      std::vector<int> off(stencil_.size());
      Vec co(stencil_.size());
      for (std::size_t k = 0; k < stencil_.size(); ++k) {
        off[k] = stencil_[k].first;
        co[k] = stencil_[k].second;
      }
      if (storage_ == Storage::Circulant)
        kernels::stencil_spmv_periodic_auto(off.data(), co.data(), off.size(), rows_, scale_,
                                            x.data(), y.data());
      else
        kernels::stencil_spmv_clipped_auto(off.data(), co.data(), off.size(), rows_, scale_,
                                           x.data(), y.data());
      break;
    }
    case Storage::Sparse:
      kernels::csr_spmv_auto(rowptr_.data(), colidx_.data(), values_.data(), rows_, scale_,
                             x.data(), y.data());
      break;
    case Storage::Transform: {
      apply_fn_(x.data(), y.data());
      if (scale_ != 1.0)
        for (std::size_t i = 0; i < y.size(); ++i) y[i] *= scale_;
      break;
    }
  }
}

void Matrix::apply_transpose(std::span<const double> x, std::span<double> y) const {
  check_apply_dims(x.size(), y.size(), true);
  switch (storage_) {
    case Storage::Banded:
    case Storage::Circulant: {
      // Transpose of a constant stencil is the stencil with negated offsets.
      std::vector<int> off(stencil_.size());
      Vec co(stencil_.size());
      for (std::size_t k = 0; k < stencil_.size(); ++k) {
        off[k] = -stencil_[k].first;
        co[k] = stencil_[k].second;
      }
      if (storage_ == Storage::Circulant)
        kernels::stencil_spmv_periodic_auto(off.data(), co.data(), off.size(), rows_, scale_,
                                            x.data(), y.data());
      else
        kernels::stencil_spmv_clipped_auto(off.data(), co.data(), off.size(), rows_, scale_,
                                           x.data(), y.data());
      break;
    }
    case Storage::Dense: {
      std::fill(y.begin(), y.end(), 0.0);
      for (std::size_t i = 0; i < rows_; ++i) {
        const double xi = scale_ * x[i];
        const double* row = dense_.data() + i * cols_;
        kernels::axpy_serial(xi, row, y.data(), cols_);
      }
      break;
    }
    case Storage::Sparse: {
      std::fill(y.begin(), y.end(), 0.0);
      for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = rowptr_[i]; k < rowptr_[i + 1]; ++k)
          y[colidx_[k]] += scale_ * values_[k] * x[i];
      break;
    }
    case Storage::Transform: {
      apply_t_fn_(x.data(), y.data());
      if (scale_ != 1.0)
        for (std::size_t i = 0; i < y.size(); ++i) y[i] *= scale_;
      break;
    }
  }
}

Vec Matrix::apply(const Vec& x) const {
  Vec y(rows_);
  apply(std::span<const double>(x), std::span<double>(y));
  return y;
}

Vec Matrix::apply_transpose(const Vec& x) const {
  Vec y(cols_);
  apply_transpose(std::span<const double>(x), std::span<double>(y));
  return y;
}

void Matrix::for_each_entry(const std::function<void(std::size_t, std::size_t, double)>& fn) const {
  switch (storage_) {
    case Storage::Dense:
    case Storage::Transform: {
      if (dense_.empty() && storage_ == Storage::Transform)
        throw std::logic_error("transform matrix has no dense form to iterate");
      for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) {
          const double v = scale_ * dense_[i * cols_ + j];
          if (v != 0.0) fn(i, j, v);
        }
      break;
    }
    case Storage::Banded:
    case Storage::Circulant: {
      const bool wrap = storage_ == Storage::Circulant;
      for (std::size_t i = 0; i < rows_; ++i)
        for (const auto& [off, c] : stencil_) {
          std::ptrdiff_t j = static_cast<std::ptrdiff_t>(i) + off;
          if (wrap) {
            if (j < 0) j += static_cast<std::ptrdiff_t>(cols_);
            if (j >= static_cast<std::ptrdiff_t>(cols_)) j -= static_cast<std::ptrdiff_t>(cols_);
          } else if (j < 0 || j >= static_cast<std::ptrdiff_t>(cols_)) {
            continue;
          }
          fn(i, static_cast<std::size_t>(j), scale_ * c);
        }
      break;
    }
    case Storage::Sparse:
      for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = rowptr_[i]; k < rowptr_[i + 1]; ++k)
          fn(i, colidx_[k], scale_ * values_[k]);
      break;
  }
}

Vec Matrix::to_dense() const {
  Vec out(rows_ * cols_, 0.0);
  for_each_entry([&](std::size_t i, std::size_t j, double v) { out[i * cols_ + j] += v; });
  return out;
}

double Matrix::max_abs_entry() const {
  if (storage_ == Storage::Transform && dense_.empty()) {
    // No dense form: estimate the largest entry by probing with random unit
    // vectors; adequate for the tolerance scaling it feeds.
    std::mt19937_64 rng(12345);
    Vec x(cols_), y(rows_);
    double m = 0.0;
    for (int p = 0; p < 16; ++p) {
      for (auto& v : x) v = (static_cast<double>(rng() >> 11) * 0x1.0p-53) * 2.0 - 1.0;
      apply(x, y);
      m = std::max(m, norm_inf(y) / std::max(norm_inf(x), 1e-300));
    }
    return m;
  }
  double m = 0.0;
  for_each_entry([&](std::size_t, std::size_t, double v) { m = std::max(m, std::fabs(v)); });
  return m;
}

void BlockBuilder::add(std::size_t row0, std::size_t col0, const Matrix& m, double factor) {
  m.for_each_entry([&](std::size_t i, std::size_t j, double v) {
    entries_.push_back({row0 + i, col0 + j, factor * v});
  });
}

void BlockBuilder::add_transposed(std::size_t row0, std::size_t col0, const Matrix& m, double factor) {
  m.for_each_entry([&](std::size_t i, std::size_t j, double v) {
    entries_.push_back({row0 + j, col0 + i, factor * v});
  });
}

void BlockBuilder::add_identity(std::size_t row0, std::size_t col0, std::size_t n, double factor) {
  for (std::size_t i = 0; i < n; ++i) entries_.push_back({row0 + i, col0 + i, factor});
}

void BlockBuilder::add_entry(std::size_t row, std::size_t col, double value) {
  entries_.push_back({row, col, value});
}

Matrix BlockBuilder::build(double scale) const { return Matrix::sparse(rows_, cols_, entries_, scale); }

}  // namespace avf

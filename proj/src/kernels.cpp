#include "avf/kernels.hpp"

#include <cmath>
#include <omp.h>

namespace avf::kernels {

namespace {
bool g_parallel = omp_get_max_threads() > 1;

bool use_parallel(std::size_t n) { return g_parallel && n >= grain; }
}  // namespace

void set_parallel(bool on) { g_parallel = on; }
bool parallel_enabled() { return g_parallel; }

void axpy_serial(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void axpy_parallel(double a, const double* x, double* y, std::size_t n) {
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void axpy_auto(double a, const double* x, double* y, std::size_t n) {
  use_parallel(n) ? axpy_parallel(a, x, y, n) : axpy_serial(a, x, y, n);
}

void combine_serial(double a, const double* x, double b, const double* z, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = a * x[i] + b * z[i];
}

void combine_parallel(double a, const double* x, double b, const double* z, double* y, std::size_t n) {
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < n; ++i) y[i] = a * x[i] + b * z[i];
}

void combine_auto(double a, const double* x, double b, const double* z, double* y, std::size_t n) {
  use_parallel(n) ? combine_parallel(a, x, b, z, y, n) : combine_serial(a, x, b, z, y, n);
}

namespace {
inline double csr_row(const std::size_t* rowptr, const std::uint32_t* col, const double* val,
                      std::size_t i, const double* x) {
  double acc = 0.0;
  for (std::size_t k = rowptr[i]; k < rowptr[i + 1]; ++k) acc += val[k] * x[col[k]];
  return acc;
}
}  // namespace

void csr_spmv_serial(const std::size_t* rowptr, const std::uint32_t* col, const double* val,
                     std::size_t rows, double s, const double* x, double* y) {
  for (std::size_t i = 0; i < rows; ++i) y[i] = s * csr_row(rowptr, col, val, i, x);
}

void csr_spmv_parallel(const std::size_t* rowptr, const std::uint32_t* col, const double* val,
                       std::size_t rows, double s, const double* x, double* y) {
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < rows; ++i) y[i] = s * csr_row(rowptr, col, val, i, x);
}

void csr_spmv_auto(const std::size_t* rowptr, const std::uint32_t* col, const double* val,
                   std::size_t rows, double s, const double* x, double* y) {
  use_parallel(rows) ? csr_spmv_parallel(rowptr, col, val, rows, s, x, y)
                     : csr_spmv_serial(rowptr, col, val, rows, s, x, y);
}

namespace {
inline double stencil_row_periodic(const int* off, const double* c, std::size_t nk,
                                   std::size_t n, std::size_t i, const double* x) {
  double acc = 0.0;
  for (std::size_t k = 0; k < nk; ++k) {
    std::ptrdiff_t j = static_cast<std::ptrdiff_t>(i) + off[k];
    if (j < 0) j += static_cast<std::ptrdiff_t>(n);
    if (j >= static_cast<std::ptrdiff_t>(n)) j -= static_cast<std::ptrdiff_t>(n);
    acc += c[k] * x[j];
  }
  return acc;
}

inline double stencil_row_clipped(const int* off, const double* c, std::size_t nk,
                                  std::size_t n, std::size_t i, const double* x) {
  double acc = 0.0;
  for (std::size_t k = 0; k < nk; ++k) {
    std::ptrdiff_t j = static_cast<std::ptrdiff_t>(i) + off[k];
    if (j < 0 || j >= static_cast<std::ptrdiff_t>(n)) continue;
    acc += c[k] * x[j];
  }
  return acc;
}
}  // namespace

void stencil_spmv_periodic_serial(const int* off, const double* c, std::size_t nk,
                                  std::size_t n, double s, const double* x, double* y) {
  for (std::size_t i = 0; i < n; ++i) y[i] = s * stencil_row_periodic(off, c, nk, n, i, x);
}

void stencil_spmv_periodic_parallel(const int* off, const double* c, std::size_t nk,
                                    std::size_t n, double s, const double* x, double* y) {
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < n; ++i) y[i] = s * stencil_row_periodic(off, c, nk, n, i, x);
}

void stencil_spmv_periodic_auto(const int* off, const double* c, std::size_t nk,
                                std::size_t n, double s, const double* x, double* y) {
  use_parallel(n) ? stencil_spmv_periodic_parallel(off, c, nk, n, s, x, y)
                  : stencil_spmv_periodic_serial(off, c, nk, n, s, x, y);
}

void stencil_spmv_clipped_serial(const int* off, const double* c, std::size_t nk,
                                 std::size_t n, double s, const double* x, double* y) {
  for (std::size_t i = 0; i < n; ++i) y[i] = s * stencil_row_clipped(off, c, nk, n, i, x);
}

void stencil_spmv_clipped_parallel(const int* off, const double* c, std::size_t nk,
                                   std::size_t n, double s, const double* x, double* y) {
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < n; ++i) y[i] = s * stencil_row_clipped(off, c, nk, n, i, x);
}

void stencil_spmv_clipped_auto(const int* off, const double* c, std::size_t nk,
                               std::size_t n, double s, const double* x, double* y) {
  use_parallel(n) ? stencil_spmv_clipped_parallel(off, c, nk, n, s, x, y)
                  : stencil_spmv_clipped_serial(off, c, nk, n, s, x, y);
}

void dense_gemv_serial(const double* a, std::size_t rows, std::size_t cols,
                       double s, const double* x, double* y) {
  for (std::size_t i = 0; i < rows; ++i) {
    const double* row = a + i * cols;
    double acc = 0.0;
    for (std::size_t j = 0; j < cols; ++j) acc += row[j] * x[j];
    y[i] = s * acc;
  }
}

void dense_gemv_parallel(const double* a, std::size_t rows, std::size_t cols,
                         double s, const double* x, double* y) {
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < rows; ++i) {
    const double* row = a + i * cols;
    double acc = 0.0;
    for (std::size_t j = 0; j < cols; ++j) acc += row[j] * x[j];
    y[i] = s * acc;
  }
}

void dense_gemv_auto(const double* a, std::size_t rows, std::size_t cols,
                     double s, const double* x, double* y) {
  use_parallel(rows * cols) ? dense_gemv_parallel(a, rows, cols, s, x, y)
                            : dense_gemv_serial(a, rows, cols, s, x, y);
}

namespace {
inline double ipow(double u, int e) {
  double r = 1.0;
  for (int k = 0; k < e; ++k) r *= u;
  return r;
}
}  // namespace

void monomial_grad_serial(const double* w, int degree, const double* u, double* g, std::size_t n) {
  const double d = degree;
  for (std::size_t i = 0; i < n; ++i) g[i] += (w ? w[i] : 1.0) * d * ipow(u[i], degree - 1);
}

void monomial_grad_parallel(const double* w, int degree, const double* u, double* g, std::size_t n) {
  const double d = degree;
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < n; ++i) g[i] += (w ? w[i] : 1.0) * d * ipow(u[i], degree - 1);
}

void monomial_grad_auto(const double* w, int degree, const double* u, double* g, std::size_t n) {
  use_parallel(n) ? monomial_grad_parallel(w, degree, u, g, n)
                  : monomial_grad_serial(w, degree, u, g, n);
}

void sine_grad_serial(const double* w, const double* u, double* g, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) g[i] += (w ? w[i] : 1.0) * std::sin(u[i]);
}

void sine_grad_parallel(const double* w, const double* u, double* g, std::size_t n) {
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < n; ++i) g[i] += (w ? w[i] : 1.0) * std::sin(u[i]);
}

void sine_grad_auto(const double* w, const double* u, double* g, std::size_t n) {
  use_parallel(n) ? sine_grad_parallel(w, u, g, n) : sine_grad_serial(w, u, g, n);
}

double sinc(double x) {
  // Below the branch point the two-term series is exact to double precision
  // (next term is x^4/120 ~ 1e-33 at x = 1e-8).
  if (std::fabs(x) <= 1e-8) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

namespace {
inline double sine_avg_elem(double a, double b) {
  return std::sin(0.5 * (a + b)) * sinc(0.5 * (b - a));
}
}  // namespace

void sine_segment_avg_serial(const double* w, const double* a, const double* b, double* g, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) g[i] += (w ? w[i] : 1.0) * sine_avg_elem(a[i], b[i]);
}

void sine_segment_avg_parallel(const double* w, const double* a, const double* b, double* g, std::size_t n) {
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < n; ++i) g[i] += (w ? w[i] : 1.0) * sine_avg_elem(a[i], b[i]);
}

void sine_segment_avg_auto(const double* w, const double* a, const double* b, double* g, std::size_t n) {
  use_parallel(n) ? sine_segment_avg_parallel(w, a, b, g, n)
                  : sine_segment_avg_serial(w, a, b, g, n);
}

double dot(const double* x, const double* y, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

double max_abs(const double* x, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::fabs(x[i]));
  return m;
}

}  // namespace avf::kernels

#pragma once
// Low-level array kernels behind operator application and the componentwise
// energy terms.  Every kernel comes in a serial and an OpenMP flavor with
// identical per-element arithmetic, so results are bit-identical between the
// two; the *_auto wrappers pick a flavor from the global policy and the
// problem size.  Reductions (dot products, norms, energy sums) are kept
// serial on purpose: they are cheap next to the matvecs and keeping a fixed
// summation order makes whole runs reproducible bit-for-bit.

#include <cstddef>
#include <cstdint>
#include <vector>

namespace avf::kernels {

// Minimum element count before the parallel flavor is worth dispatching to.
inline constexpr std::size_t grain = 4096;

void set_parallel(bool on);   // default: on when OpenMP has >1 thread
bool parallel_enabled();

// y += a*x
void axpy_serial(double a, const double* x, double* y, std::size_t n);
void axpy_parallel(double a, const double* x, double* y, std::size_t n);
void axpy_auto(double a, const double* x, double* y, std::size_t n);

// y = a*x + b*z
void combine_serial(double a, const double* x, double b, const double* z, double* y, std::size_t n);
void combine_parallel(double a, const double* x, double b, const double* z, double* y, std::size_t n);
void combine_auto(double a, const double* x, double b, const double* z, double* y, std::size_t n);

// CSR matvec, y = s*A*x.  Row sums are accumulated left to right in column
// order by whichever thread owns the row, so the flavors agree exactly.
void csr_spmv_serial(const std::size_t* rowptr, const std::uint32_t* col, const double* val,
                     std::size_t rows, double s, const double* x, double* y);
void csr_spmv_parallel(const std::size_t* rowptr, const std::uint32_t* col, const double* val,
                       std::size_t rows, double s, const double* x, double* y);
void csr_spmv_auto(const std::size_t* rowptr, const std::uint32_t* col, const double* val,
                   std::size_t rows, double s, const double* x, double* y);

// Constant-stencil matvec on a periodic (wrapped) or clipped index range:
// y_i = s * sum_k c_k x_{i+off_k}.  Offsets out of range wrap or drop.
void stencil_spmv_periodic_serial(const int* off, const double* c, std::size_t nk,
                                  std::size_t n, double s, const double* x, double* y);
void stencil_spmv_periodic_parallel(const int* off, const double* c, std::size_t nk,
                                    std::size_t n, double s, const double* x, double* y);
void stencil_spmv_periodic_auto(const int* off, const double* c, std::size_t nk,
                                std::size_t n, double s, const double* x, double* y);
void stencil_spmv_clipped_serial(const int* off, const double* c, std::size_t nk,
                                 std::size_t n, double s, const double* x, double* y);
void stencil_spmv_clipped_parallel(const int* off, const double* c, std::size_t nk,
                                   std::size_t n, double s, const double* x, double* y);
void stencil_spmv_clipped_auto(const int* off, const double* c, std::size_t nk,
                               std::size_t n, double s, const double* x, double* y);

// Row-major dense matvec, y = s*A*x.
void dense_gemv_serial(const double* a, std::size_t rows, std::size_t cols,
                       double s, const double* x, double* y);
void dense_gemv_parallel(const double* a, std::size_t rows, std::size_t cols,
                         double s, const double* x, double* y);
void dense_gemv_auto(const double* a, std::size_t rows, std::size_t cols,
                     double s, const double* x, double* y);

// g_i += w_i * d * u_i^(d-1)   (monomial gradient; w may be null for w=1)
void monomial_grad_serial(const double* w, int degree, const double* u, double* g, std::size_t n);
void monomial_grad_parallel(const double* w, int degree, const double* u, double* g, std::size_t n);
void monomial_grad_auto(const double* w, int degree, const double* u, double* g, std::size_t n);

// g_i += w_i * sin(u_i)
void sine_grad_serial(const double* w, const double* u, double* g, std::size_t n);
void sine_grad_parallel(const double* w, const double* u, double* g, std::size_t n);
void sine_grad_auto(const double* w, const double* u, double* g, std::size_t n);

// g_i += w_i * sin((a_i+b_i)/2) * sinc((b_i-a_i)/2)
// i.e. the exact segment average of sin between a_i and b_i.
void sine_segment_avg_serial(const double* w, const double* a, const double* b, double* g, std::size_t n);
void sine_segment_avg_parallel(const double* w, const double* a, const double* b, double* g, std::size_t n);
void sine_segment_avg_auto(const double* w, const double* a, const double* b, double* g, std::size_t n);

// Serial reductions (fixed order, see header comment).
double dot(const double* x, const double* y, std::size_t n);
double max_abs(const double* x, std::size_t n);

// sinc(x) = sin(x)/x with the series branch near zero.
double sinc(double x);

}  // namespace avf::kernels

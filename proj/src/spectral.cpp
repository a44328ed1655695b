#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "avf/operators.hpp"

namespace avf {

namespace {
// FFTW plan creation is not thread-safe; execution through the new-array
// interface is.  Convergence studies build systems concurrently, so guard
// the planner.
std::mutex g_fftw_mutex;

void spectral_apply_impl(fftw_plan fwd, fftw_plan bwd, const Vec& kappa, double sign,
                         std::size_t n, const double* x, double* y) {
  const std::size_t nc = n / 2 + 1;
  Vec rbuf(x, x + n);
  std::vector<fftw_complex> cbuf(nc);
  fftw_execute_dft_r2c(fwd, rbuf.data(), cbuf.data());
  // Multiply mode k by sign * i * kappa_k: (re, im) -> (-s k im, s k re).
  for (std::size_t k = 0; k < nc; ++k) {
    const double sk = sign * kappa[k];
    const double re = cbuf[k][0], im = cbuf[k][1];
    cbuf[k][0] = -sk * im;
    cbuf[k][1] = sk * re;
  }
  fftw_execute_dft_c2r(bwd, cbuf.data(), rbuf.data());
  const double inv = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = inv * rbuf[i];
}
}  // namespace

struct SpectralDerivative::Fft {
  fftw_plan fwd = nullptr, bwd = nullptr;

  explicit Fft(std::size_t n) {
    std::lock_guard<std::mutex> lock(g_fftw_mutex);
    Vec rbuf(n);
    std::vector<fftw_complex> cbuf(n / 2 + 1);
    // FFTW_UNALIGNED lets the plans run on arbitrary caller buffers.
    fwd = fftw_plan_dft_r2c_1d(static_cast<int>(n), rbuf.data(), cbuf.data(),
                               FFTW_ESTIMATE | FFTW_UNALIGNED);
    bwd = fftw_plan_dft_c2r_1d(static_cast<int>(n), cbuf.data(), rbuf.data(),
                               FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!fwd || !bwd) throw std::runtime_error("fftw plan creation failed");
  }
  ~Fft() {
    std::lock_guard<std::mutex> lock(g_fftw_mutex);
    if (fwd) fftw_destroy_plan(fwd);
    if (bwd) fftw_destroy_plan(bwd);
  }
};

SpectralDerivative::SpectralDerivative(std::size_t n, double length) : n_(n), l_(length) {
  if (n < 2) throw std::invalid_argument("spectral derivative: need n >= 2");
  if (!(length > 0.0)) throw std::invalid_argument("spectral derivative: need length > 0");
  kappa_.assign(n, 0.0);
  const double base = 2.0 * std::numbers::pi / l_;
  for (std::size_t k = 0; k < n; ++k) {
    if (2 * k < n)
      kappa_[k] = base * static_cast<double>(k);
    else if (2 * k == n)
      kappa_[k] = 0.0;  // Nyquist mode of even n is annihilated
    else
      kappa_[k] = base * (static_cast<double>(k) - static_cast<double>(n));
  }
  fft_ = std::make_unique<Fft>(n);
}

SpectralDerivative::~SpectralDerivative() = default;

void SpectralDerivative::apply(const double* x, double* y) const {
  spectral_apply_impl(fft_->fwd, fft_->bwd, kappa_, 1.0, n_, x, y);
}

void SpectralDerivative::apply_transpose(const double* x, double* y) const {
  // The realized operator is real and skew, so the transpose is the
  // conjugated multiplier pass.
  spectral_apply_impl(fft_->fwd, fft_->bwd, kappa_, -1.0, n_, x, y);
}

const Vec& SpectralDerivative::dense() const {
  if (dense_.empty()) {
    Vec e(n_, 0.0), col(n_);
    Vec d(n_ * n_);
    for (std::size_t j = 0; j < n_; ++j) {
      e[j] = 1.0;
      apply(e.data(), col.data());
      e[j] = 0.0;
      for (std::size_t i = 0; i < n_; ++i) d[i * n_ + j] = col[i];
    }
    dense_ = std::move(d);
  }
  return dense_;
}

const Vec& SpectralDerivative::gram_dense() const {
  if (gram_dense_.empty()) {
    // Materialize D'D by the same two-pass application used at runtime.
    Vec e(n_, 0.0), mid(n_), col(n_);
    Vec d(n_ * n_);
    for (std::size_t j = 0; j < n_; ++j) {
      e[j] = 1.0;
      apply(e.data(), mid.data());
      apply_transpose(mid.data(), col.data());
      e[j] = 0.0;
      for (std::size_t i = 0; i < n_; ++i) d[i * n_ + j] = col[i];
    }
    gram_dense_ = std::move(d);
  }
  return gram_dense_;
}

std::shared_ptr<SpectralDerivative> spectral_derivative_operator(std::size_t n, double length) {
  return std::make_shared<SpectralDerivative>(n, length);
}

std::shared_ptr<const Matrix> spectral_as_matrix(std::shared_ptr<const SpectralDerivative> d) {
  const std::size_t n = d->size();
  Vec dense = d->dense();
  return std::make_shared<Matrix>(Matrix::transform(
      n, n, [d](const double* x, double* y) { d->apply(x, y); },
      [d](const double* x, double* y) { d->apply_transpose(x, y); }, std::move(dense)));
}

std::shared_ptr<const Matrix> spectral_gram_matrix(std::shared_ptr<const SpectralDerivative> d) {
  const std::size_t n = d->size();
  Vec dense = d->gram_dense();
  auto pass2 = [d](const double* x, double* y) {
    Vec mid(d->size());
    d->apply(x, mid.data());
    d->apply_transpose(mid.data(), y);
  };
  return std::make_shared<Matrix>(Matrix::transform(n, n, pass2, pass2, std::move(dense)));
}

}  // namespace avf

#include "avf/energy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "avf/kernels.hpp"
#include "avf/quadrature.hpp"

namespace avf {
namespace {

// Gauss point count that integrates a degree-d polynomial density exactly
// (2m-1 >= d); the gradient and Jacobian integrands have lower degree, so
// the same rule covers them too.
int gauss_points_for_degree(int d) { return (d + 2) / 2; }

void fetch_rule(int m, Vec& xi, Vec& wq) {
  QuadratureRule r = gauss_legendre_01(m);
  xi = r.nodes;
  wq = r.weights;
}

// Derivative of the exact sine segment average with respect to the right
// endpoint b:  d/db [ sin(mid) sinc(h) ] with mid = (a+b)/2, h = (b-a)/2
//   = ( cos(mid) sinc(h) + sin(mid) (cos h - sinc h)/h ) / 2,
// which tends to cos(a)/2 as b -> a.
double cos_minus_sinc_over_x(double x) {
  if (std::abs(x) < 1e-4) {
    double x2 = x * x;
    return x * (-1.0 / 3.0 + x2 / 30.0);
  }
  return (std::cos(x) - kernels::sinc(x)) / x;
}

double sine_segment_avg_db(double a, double b) {
  double mid = 0.5 * (a + b), h = 0.5 * (b - a);
  return 0.5 * (std::cos(mid) * kernels::sinc(h) + std::sin(mid) * cos_minus_sinc_over_x(h));
}

}  // namespace

// ---------------------------------------------------------------------------
// AffineTerm

AffineTerm::AffineTerm(std::size_t offset, std::shared_ptr<const Matrix> q, Vec c, double k0)
    : offset_(offset), q_(std::move(q)), c_(std::move(c)), k0_(k0) {
  if (!q_ && c_.empty()) throw std::invalid_argument("affine term needs Q or c");
  if (q_ && q_->rows() != q_->cols()) throw std::invalid_argument("affine Q must be square");
  if (q_ && !c_.empty() && c_.size() != q_->rows())
    throw std::invalid_argument("affine Q/c size mismatch");
}

std::string AffineTerm::describe() const {
  std::ostringstream os;
  os << "affine: midpoint (n=" << (q_ ? q_->rows() : c_.size()) << ")";
  return os.str();
}

double AffineTerm::energy(const Vec& u) const {
  std::size_t n = q_ ? q_->rows() : c_.size();
  const double* s = u.data() + offset_;
  double e = k0_;
  if (q_) {
    Vec qs(n);
    q_->apply({s, n}, qs);
    e += 0.5 * kernels::dot(s, qs.data(), n);
  }
  if (!c_.empty()) e += kernels::dot(s, c_.data(), n);
  return e;
}

void AffineTerm::add_gradient(const Vec& u, Vec& g) const {
  std::size_t n = q_ ? q_->rows() : c_.size();
  const double* s = u.data() + offset_;
  double* gs = g.data() + offset_;
  if (q_) {
    Vec qs(n);
    q_->apply({s, n}, qs);
    kernels::axpy_auto(1.0, qs.data(), gs, n);
  }
  if (!c_.empty()) kernels::axpy_auto(1.0, c_.data(), gs, n);
}

void AffineTerm::add_segment_gradient(const Vec& a, const Vec& b, Vec& g) const {
  // Gradient is affine in u, so the segment average is the midpoint value.
  std::size_t n = q_ ? q_->rows() : c_.size();
  const double* sa = a.data() + offset_;
  const double* sb = b.data() + offset_;
  double* gs = g.data() + offset_;
  if (q_) {
    Vec mid(n), qs(n);
    kernels::combine_auto(0.5, sa, 0.5, sb, mid.data(), n);
    q_->apply(mid, qs);
    kernels::axpy_auto(1.0, qs.data(), gs, n);
  }
  if (!c_.empty()) kernels::axpy_auto(1.0, c_.data(), gs, n);
}

void AffineTerm::add_segment_jacobian(const Vec&, const Vec&, DenseMat& k) const {
  if (!q_) return;
  std::size_t off = offset_;
  q_->for_each_entry([&](std::size_t i, std::size_t j, double v) {
    k.at(off + i, off + j) += 0.5 * v;
  });
}

void AffineTerm::add_hessian(const Vec&, DenseMat& k) const {
  if (!q_) return;
  std::size_t off = offset_;
  q_->for_each_entry([&](std::size_t i, std::size_t j, double v) {
    k.at(off + i, off + j) += v;
  });
}

// ---------------------------------------------------------------------------
// MonomialTerm

MonomialTerm::MonomialTerm(std::size_t offset, std::size_t count, int degree, double weight)
    : MonomialTerm(offset, Vec(count, weight), degree) {}

MonomialTerm::MonomialTerm(std::size_t offset, Vec weights, int degree)
    : offset_(offset), w_(std::move(weights)), degree_(degree) {
  if (degree_ < 1) throw std::invalid_argument("monomial degree must be >= 1");
  fetch_rule(gauss_points_for_degree(degree_), xi_, wq_);
}

std::string MonomialTerm::describe() const {
  std::ostringstream os;
  os << "polynomial(" << degree_ << "): gauss(" << xi_.size() << ")";
  return os.str();
}

double MonomialTerm::energy(const Vec& u) const {
  const double* s = u.data() + offset_;
  double e = 0.0;
  for (std::size_t i = 0; i < w_.size(); ++i) e += w_[i] * std::pow(s[i], degree_);
  return e;
}

void MonomialTerm::add_gradient(const Vec& u, Vec& g) const {
  kernels::monomial_grad_auto(w_.data(), degree_, u.data() + offset_, g.data() + offset_, w_.size());
}

void MonomialTerm::add_segment_gradient(const Vec& a, const Vec& b, Vec& g) const {
  const double* sa = a.data() + offset_;
  const double* sb = b.data() + offset_;
  double* gs = g.data() + offset_;
  int dm1 = degree_ - 1;
  double d = degree_;
  for (std::size_t i = 0; i < w_.size(); ++i) {
    double acc = 0.0;
    for (std::size_t q = 0; q < xi_.size(); ++q) {
      double uq = (1.0 - xi_[q]) * sa[i] + xi_[q] * sb[i];
      acc += wq_[q] * std::pow(uq, dm1);
    }
    gs[i] += w_[i] * d * acc;
  }
}

void MonomialTerm::add_segment_jacobian(const Vec& a, const Vec& b, DenseMat& k) const {
  if (degree_ < 2) return;
  const double* sa = a.data() + offset_;
  const double* sb = b.data() + offset_;
  int dm2 = degree_ - 2;
  double dd = double(degree_) * (degree_ - 1);
  for (std::size_t i = 0; i < w_.size(); ++i) {
    double acc = 0.0;
    for (std::size_t q = 0; q < xi_.size(); ++q) {
      double uq = (1.0 - xi_[q]) * sa[i] + xi_[q] * sb[i];
      acc += wq_[q] * xi_[q] * std::pow(uq, dm2);
    }
    k.at(offset_ + i, offset_ + i) += w_[i] * dd * acc;
  }
}

void MonomialTerm::add_hessian(const Vec& u, DenseMat& k) const {
  if (degree_ < 2) return;
  const double* s = u.data() + offset_;
  double dd = double(degree_) * (degree_ - 1);
  for (std::size_t i = 0; i < w_.size(); ++i)
    k.at(offset_ + i, offset_ + i) += w_[i] * dd * std::pow(s[i], degree_ - 2);
}

// ---------------------------------------------------------------------------
// CosineWellTerm

CosineWellTerm::CosineWellTerm(std::size_t offset, Vec amplitudes)
    : offset_(offset), w_(std::move(amplitudes)) {}

double CosineWellTerm::energy(const Vec& u) const {
  const double* s = u.data() + offset_;
  double e = 0.0;
  for (std::size_t i = 0; i < w_.size(); ++i) e += w_[i] * (1.0 - std::cos(s[i]));
  return e;
}

void CosineWellTerm::add_gradient(const Vec& u, Vec& g) const {
  kernels::sine_grad_auto(w_.data(), u.data() + offset_, g.data() + offset_, w_.size());
}

void CosineWellTerm::add_segment_gradient(const Vec& a, const Vec& b, Vec& g) const {
  kernels::sine_segment_avg_auto(w_.data(), a.data() + offset_, b.data() + offset_,
                                 g.data() + offset_, w_.size());
}

void CosineWellTerm::add_segment_jacobian(const Vec& a, const Vec& b, DenseMat& k) const {
  const double* sa = a.data() + offset_;
  const double* sb = b.data() + offset_;
  for (std::size_t i = 0; i < w_.size(); ++i)
    k.at(offset_ + i, offset_ + i) += w_[i] * sine_segment_avg_db(sa[i], sb[i]);
}

void CosineWellTerm::add_hessian(const Vec& u, DenseMat& k) const {
  const double* s = u.data() + offset_;
  for (std::size_t i = 0; i < w_.size(); ++i)
    k.at(offset_ + i, offset_ + i) += w_[i] * std::cos(s[i]);
}

// ---------------------------------------------------------------------------
// RadialQuarticTerm

RadialQuarticTerm::RadialQuarticTerm(std::size_t offset, std::size_t pairs, double weight)
    : offset_(offset), pairs_(pairs), w_(weight) {
  fetch_rule(gauss_points_for_degree(4), xi_, wq_);
}

std::string RadialQuarticTerm::describe() const {
  std::ostringstream os;
  os << "polynomial(4) radial: gauss(" << xi_.size() << ")";
  return os.str();
}

double RadialQuarticTerm::energy(const Vec& u) const {
  const double* sa = u.data() + offset_;
  const double* sb = sa + pairs_;
  double e = 0.0;
  for (std::size_t j = 0; j < pairs_; ++j) {
    double r = sa[j] * sa[j] + sb[j] * sb[j];
    e += w_ * r * r;
  }
  return e;
}

void RadialQuarticTerm::add_gradient(const Vec& u, Vec& g) const {
  const double* sa = u.data() + offset_;
  const double* sb = sa + pairs_;
  double* ga = g.data() + offset_;
  double* gb = ga + pairs_;
  for (std::size_t j = 0; j < pairs_; ++j) {
    double r = sa[j] * sa[j] + sb[j] * sb[j];
    ga[j] += 4.0 * w_ * r * sa[j];
    gb[j] += 4.0 * w_ * r * sb[j];
  }
}

void RadialQuarticTerm::add_segment_gradient(const Vec& a, const Vec& b, Vec& g) const {
  const double* aa = a.data() + offset_;
  const double* ab = aa + pairs_;
  const double* ba = b.data() + offset_;
  const double* bb = ba + pairs_;
  double* ga = g.data() + offset_;
  double* gb = ga + pairs_;
  for (std::size_t j = 0; j < pairs_; ++j) {
    double acc_a = 0.0, acc_b = 0.0;
    for (std::size_t q = 0; q < xi_.size(); ++q) {
      double pa = (1.0 - xi_[q]) * aa[j] + xi_[q] * ba[j];
      double pb = (1.0 - xi_[q]) * ab[j] + xi_[q] * bb[j];
      double r = pa * pa + pb * pb;
      acc_a += wq_[q] * r * pa;
      acc_b += wq_[q] * r * pb;
    }
    ga[j] += 4.0 * w_ * acc_a;
    gb[j] += 4.0 * w_ * acc_b;
  }
}

void RadialQuarticTerm::add_segment_jacobian(const Vec& a, const Vec& b, DenseMat& k) const {
  const double* aa = a.data() + offset_;
  const double* ab = aa + pairs_;
  const double* ba = b.data() + offset_;
  const double* bb = ba + pairs_;
  for (std::size_t j = 0; j < pairs_; ++j) {
    std::size_t ia = offset_ + j, ib = offset_ + pairs_ + j;
    double kaa = 0.0, kab = 0.0, kbb = 0.0;
    for (std::size_t q = 0; q < xi_.size(); ++q) {
      double pa = (1.0 - xi_[q]) * aa[j] + xi_[q] * ba[j];
      double pb = (1.0 - xi_[q]) * ab[j] + xi_[q] * bb[j];
      double r = pa * pa + pb * pb;
      kaa += wq_[q] * xi_[q] * (r + 2.0 * pa * pa);
      kab += wq_[q] * xi_[q] * 2.0 * pa * pb;
      kbb += wq_[q] * xi_[q] * (r + 2.0 * pb * pb);
    }
    k.at(ia, ia) += 4.0 * w_ * kaa;
    k.at(ia, ib) += 4.0 * w_ * kab;
    k.at(ib, ia) += 4.0 * w_ * kab;
    k.at(ib, ib) += 4.0 * w_ * kbb;
  }
}

void RadialQuarticTerm::add_hessian(const Vec& u, DenseMat& k) const {
  const double* sa = u.data() + offset_;
  const double* sb = sa + pairs_;
  for (std::size_t j = 0; j < pairs_; ++j) {
    std::size_t ia = offset_ + j, ib = offset_ + pairs_ + j;
    double r = sa[j] * sa[j] + sb[j] * sb[j];
    k.at(ia, ia) += 4.0 * w_ * (r + 2.0 * sa[j] * sa[j]);
    k.at(ia, ib) += 8.0 * w_ * sa[j] * sb[j];
    k.at(ib, ia) += 8.0 * w_ * sa[j] * sb[j];
    k.at(ib, ib) += 4.0 * w_ * (r + 2.0 * sb[j] * sb[j]);
  }
}

// ---------------------------------------------------------------------------
// GenericTerm

GenericTerm::GenericTerm(EnergyFn e, GradientFn g, int gauss_points)
    : e_(std::move(e)), g_(std::move(g)), m_(gauss_points) {
  if (m_ < 1) throw std::invalid_argument("generic term needs >= 1 Gauss point");
  fetch_rule(m_, xi_, wq_);
}

std::string GenericTerm::describe() const {
  std::ostringstream os;
  os << "generic: gauss(" << m_ << ")";
  return os.str();
}

double GenericTerm::energy(const Vec& u) const { return e_(u); }

void GenericTerm::add_gradient(const Vec& u, Vec& g) const { g_(u, g); }

void GenericTerm::add_segment_gradient(const Vec& a, const Vec& b, Vec& g) const {
  std::size_t n = a.size();
  Vec point(n), gq(n);
  for (std::size_t q = 0; q < xi_.size(); ++q) {
    kernels::combine_auto(1.0 - xi_[q], a.data(), xi_[q], b.data(), point.data(), n);
    std::fill(gq.begin(), gq.end(), 0.0);
    g_(point, gq);
    kernels::axpy_auto(wq_[q], gq.data(), g.data(), n);
  }
}

void GenericTerm::add_segment_jacobian(const Vec& a, const Vec& b, DenseMat& k) const {
  // Finite-difference the segment average in the b argument.
  std::size_t n = b.size();
  Vec bp(n), base(n, 0.0), pert(n);
  add_segment_gradient(a, b, base);
  const double h = 1e-7;
  for (std::size_t j = 0; j < n; ++j) {
    bp = b;
    bp[j] += h;
    std::fill(pert.begin(), pert.end(), 0.0);
    add_segment_gradient(a, bp, pert);
    for (std::size_t i = 0; i < n; ++i) k.at(i, j) += (pert[i] - base[i]) / h;
  }
}

void GenericTerm::add_hessian(const Vec& u, DenseMat& k) const {
  std::size_t n = u.size();
  Vec up(n), base(n, 0.0), pert(n);
  g_(u, base);
  const double h = 1e-7;
  for (std::size_t j = 0; j < n; ++j) {
    up = u;
    up[j] += h;
    std::fill(pert.begin(), pert.end(), 0.0);
    g_(up, pert);
    for (std::size_t i = 0; i < n; ++i) k.at(i, j) += (pert[i] - base[i]) / h;
  }
}

// ---------------------------------------------------------------------------
// EnergyMonitor

EnergyMonitor::EnergyMonitor(std::string name, std::size_t dim, double dx_volume)
    : name_(std::move(name)), dim_(dim), dx_volume_(dx_volume) {
  if (dim_ == 0) throw std::invalid_argument("monitor dimension must be positive");
  if (dx_volume_ <= 0.0) throw std::invalid_argument("volume element must be positive");
}

void EnergyMonitor::add_term(std::shared_ptr<const EnergyTerm> term) {
  terms_.push_back(std::move(term));
}

void EnergyMonitor::check_dim(const Vec& u) const {
  if (u.size() != dim_)
    throw std::invalid_argument("state size " + std::to_string(u.size()) +
                                " does not match monitor '" + name_ + "' dimension " +
                                std::to_string(dim_));
}

double EnergyMonitor::energy(const Vec& u) const {
  return energy_sum(u) * dx_volume_;
}

double EnergyMonitor::energy_sum(const Vec& u) const {
  check_dim(u);
  double e = 0.0;
  for (const auto& t : terms_) e += t->energy(u);
  return e;
}

void EnergyMonitor::gradient(const Vec& u, Vec& g) const {
  check_dim(u);
  g.assign(dim_, 0.0);
  for (const auto& t : terms_) t->add_gradient(u, g);
}

Vec EnergyMonitor::gradient(const Vec& u) const {
  Vec g;
  gradient(u, g);
  return g;
}

}  // namespace avf

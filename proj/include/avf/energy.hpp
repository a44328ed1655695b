#pragma once
// Discrete energies are sums of typed terms.  Each term class knows four
// things: its value, its gradient, the exact average of its gradient along a
// straight segment between two states, and the derivative of that average
// with respect to the segment endpoint (for Newton).  The closed forms per
// class are what make the averaged vector field computable without
// quadrature error:
//   - affine (quadratic + linear energy): midpoint evaluation,
//   - componentwise polynomial: a Gauss rule matched to the degree,
//   - cosine wells: the trigonometric difference quotient,
//   - generic closures: a fixed 8-point Gauss fallback.

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "avf/matrix.hpp"
#include "avf/vec.hpp"

namespace avf {

enum class TermKind { Affine, Polynomial, Trigonometric, Generic };

class EnergyTerm {
 public:
  virtual ~EnergyTerm() = default;

  virtual TermKind kind() const = 0;
  virtual int degree() const { return 0; }
  virtual std::string describe() const = 0;

  virtual double energy(const Vec& u) const = 0;
  virtual void add_gradient(const Vec& u, Vec& g) const = 0;

  // g += integral over xi in [0,1] of grad((1-xi) a + xi b), by the term's
  // exact strategy.
  virtual void add_segment_gradient(const Vec& a, const Vec& b, Vec& g) const = 0;

  // K += d/db of that segment average (dense accumulation).
  virtual void add_segment_jacobian(const Vec& a, const Vec& b, DenseMat& k) const = 0;

  // K += Hessian of the energy at u.
  virtual void add_hessian(const Vec& u, DenseMat& k) const = 0;
};

// H = 1/2 s'Qs + c's + k0 on the slice s = u[offset .. offset+n); Q symmetric
// (may be null for a purely linear term), c may be empty.
class AffineTerm : public EnergyTerm {
 public:
  AffineTerm(std::size_t offset, std::shared_ptr<const Matrix> q, Vec c = {}, double k0 = 0.0);

  TermKind kind() const override { return TermKind::Affine; }
  int degree() const override { return q_ ? 2 : 1; }
  std::string describe() const override;
  double energy(const Vec& u) const override;
  void add_gradient(const Vec& u, Vec& g) const override;
  void add_segment_gradient(const Vec& a, const Vec& b, Vec& g) const override;
  void add_segment_jacobian(const Vec& a, const Vec& b, DenseMat& k) const override;
  void add_hessian(const Vec& u, DenseMat& k) const override;

  const Matrix* quadratic() const { return q_.get(); }
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
  std::shared_ptr<const Matrix> q_;
  Vec c_;
  double k0_;
};

// H = sum_i w_i u_i^d over the slice.
class MonomialTerm : public EnergyTerm {
 public:
  MonomialTerm(std::size_t offset, std::size_t count, int degree, double weight);
  MonomialTerm(std::size_t offset, Vec weights, int degree);

  TermKind kind() const override { return TermKind::Polynomial; }
  int degree() const override { return degree_; }
  std::string describe() const override;
  double energy(const Vec& u) const override;
  void add_gradient(const Vec& u, Vec& g) const override;
  void add_segment_gradient(const Vec& a, const Vec& b, Vec& g) const override;
  void add_segment_jacobian(const Vec& a, const Vec& b, DenseMat& k) const override;
  void add_hessian(const Vec& u, DenseMat& k) const override;

 private:
  std::size_t offset_;
  Vec w_;
  int degree_;
  Vec xi_, wq_;  // Gauss rule matched to the degree
};

// H = sum_i w_i (1 - cos u_i) over the slice.
class CosineWellTerm : public EnergyTerm {
 public:
  CosineWellTerm(std::size_t offset, Vec amplitudes);

  TermKind kind() const override { return TermKind::Trigonometric; }
  std::string describe() const override { return "trigonometric: difference quotient"; }
  double energy(const Vec& u) const override;
  void add_gradient(const Vec& u, Vec& g) const override;
  void add_segment_gradient(const Vec& a, const Vec& b, Vec& g) const override;
  void add_segment_jacobian(const Vec& a, const Vec& b, DenseMat& k) const override;
  void add_hessian(const Vec& u, DenseMat& k) const override;

 private:
  std::size_t offset_;
  Vec w_;
};

// H = sum_j w (u_j^2 + u_{j+n}^2)^2 over stacked pairs: the |u|^4 density of
// complex fields stored as [Re; Im].
class RadialQuarticTerm : public EnergyTerm {
 public:
  RadialQuarticTerm(std::size_t offset, std::size_t pairs, double weight);

  TermKind kind() const override { return TermKind::Polynomial; }
  int degree() const override { return 4; }
  std::string describe() const override;
  double energy(const Vec& u) const override;
  void add_gradient(const Vec& u, Vec& g) const override;
  void add_segment_gradient(const Vec& a, const Vec& b, Vec& g) const override;
  void add_segment_jacobian(const Vec& a, const Vec& b, DenseMat& k) const override;
  void add_hessian(const Vec& u, DenseMat& k) const override;

 private:
  std::size_t offset_, pairs_;
  double w_;
  Vec xi_, wq_;
};

// Arbitrary closures; the segment average falls back to Gauss quadrature of
// the gradient and the Jacobian/Hessian to finite differences.  Meant for
// property tests, not the problem zoo.
class GenericTerm : public EnergyTerm {
 public:
  using EnergyFn = std::function<double(const Vec&)>;
  using GradientFn = std::function<void(const Vec&, Vec&)>;  // accumulate

  GenericTerm(EnergyFn e, GradientFn g, int gauss_points = 8);

  TermKind kind() const override { return TermKind::Generic; }
  std::string describe() const override;
  double energy(const Vec& u) const override;
  void add_gradient(const Vec& u, Vec& g) const override;
  void add_segment_gradient(const Vec& a, const Vec& b, Vec& g) const override;
  void add_segment_jacobian(const Vec& a, const Vec& b, DenseMat& k) const override;
  void add_hessian(const Vec& u, DenseMat& k) const override;

 private:
  EnergyFn e_;
  GradientFn g_;
  int m_;
  Vec xi_, wq_;
};

// A named energy: an ordered list of terms over states of a fixed dimension,
// plus the grid volume element that converts the dimensionless sum to the
// physical value reported in outputs.
class EnergyMonitor {
 public:
  EnergyMonitor() = default;
  EnergyMonitor(std::string name, std::size_t dim, double dx_volume);

  void add_term(std::shared_ptr<const EnergyTerm> term);

  const std::string& name() const { return name_; }
  std::size_t dim() const { return dim_; }
  double dx_volume() const { return dx_volume_; }
  const std::vector<std::shared_ptr<const EnergyTerm>>& terms() const { return terms_; }

  double energy(const Vec& u) const;      // energy_sum scaled by dx_volume
  double energy_sum(const Vec& u) const;  // dimensionless sum over terms
  void gradient(const Vec& u, Vec& g) const;  // overwrites g
  Vec gradient(const Vec& u) const;

  void check_dim(const Vec& u) const;

 private:
  std::string name_;
  std::size_t dim_ = 0;
  double dx_volume_ = 1.0;
  std::vector<std::shared_ptr<const EnergyTerm>> terms_;
};

}  // namespace avf

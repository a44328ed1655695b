#include "avf/zoo.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <random>
#include <stdexcept>
#include <utility>

#include "avf/operators.hpp"

namespace avf {
namespace {

constexpr double kPi = std::numbers::pi;

double sech(double x) { return 1.0 / std::cosh(x); }

std::shared_ptr<const Matrix> shared(Matrix&& m) {
  return std::make_shared<const Matrix>(std::move(m));
}

// Merges caller overrides into the problem's default parameter map and
// rejects keys the problem does not define.
class Params {
 public:
  Params(std::string name, const ParamMap& defaults, const ParamMap& given)
      : name_(std::move(name)), values_(defaults) {
    for (const auto& [key, value] : given) {
      auto it = values_.find(key);
      if (it == values_.end())
        throw std::invalid_argument(name_ + ": unknown parameter '" + key + "'");
      it->second = value;
    }
  }

  double real(const std::string& key) const { return values_.at(key); }

  std::size_t count(const std::string& key, std::size_t min_value) const {
    double v = values_.at(key);
    double r = std::round(v);
    if (!(std::fabs(v - r) <= 1e-9 * std::max(1.0, std::fabs(v))) || r < double(min_value))
      throw std::invalid_argument(name_ + ": parameter '" + key + "' must be an integer >= " +
                                  std::to_string(min_value));
    return std::size_t(r);
  }

 private:
  std::string name_;
  ParamMap values_;
};

void require_structure(const SemiDiscreteSystem& sys) {
  StructureReport rep = check_structure(sys.op);
  if (!rep.pass)
    throw std::logic_error(sys.name + ": structure operator failed its class check: " +
                           rep.diagnostic);
}

// [[0, I], [-I, 0]] acting on a stacked pair (first block drives the first
// half with the gradient of the second).
Matrix stacked_symplectic(std::size_t n) {
  BlockBuilder bb(2 * n, 2 * n);
  bb.add_identity(0, n, n, 1.0);
  bb.add_identity(n, 0, n, -1.0);
  return bb.build();
}

// (1/2) [[0, -I], [I, 0]]: multiplication by i/2 on stacked re/im parts.
// Integer entries with the 1/2 in the scale keep the skew check exact.
Matrix stacked_half_i(std::size_t n) {
  BlockBuilder bb(2 * n, 2 * n);
  bb.add_identity(0, n, n, -1.0);
  bb.add_identity(n, 0, n, 1.0);
  return bb.build(0.5);
}

StateLayout pair_layout_1d(Boundary b, const char* first, const char* second, Vec coords) {
  StateLayout layout;
  layout.kind = StateLayout::Kind::StackedPair;
  layout.boundary = b;
  std::size_t n = coords.size();
  layout.components = {{first, 0, n, coords}, {second, n, n, std::move(coords)}};
  return layout;
}

StateLayout scalar_layout_1d(Boundary b, const char* name, Vec coords) {
  StateLayout layout;
  layout.kind = StateLayout::Kind::ScalarField1D;
  layout.boundary = b;
  layout.components = {{name, 0, coords.size(), std::move(coords)}};
  return layout;
}

// --- sine-Gordon -----------------------------------------------------------
//
// phi_tt = phi_xx - alpha sin phi on a periodic interval, first-order form
// (phi; pi).  The quadratic part is pi^2/2 plus the difference-quotient
// Dirichlet energy of phi; the well contributes alpha (1 - cos phi).
// `spectral` swaps the second-difference form for the Fourier collocation
// derivative's normal matrix D'D.

Problem build_sine_gordon(const ParamMap& given, bool spectral) {
  const char* name = spectral ? "sine_gordon_spectral" : "sine_gordon_fd";
  Params p(name, {{"n", 200.0}, {"alpha", 1.0}}, given);
  std::size_t n = p.count("n", 3);
  double alpha = p.real("alpha");
  double length = 40.0, dx = length / double(n);
  Vec x = uniform_coords(-20.0, dx, n);

  std::shared_ptr<const Matrix> q_phi;
  if (spectral) {
    q_phi = spectral_gram_matrix(spectral_derivative_operator(n, length));
  } else {
    q_phi = shared(Matrix::circulant(n, {{-1, -1.0}, {0, 2.0}, {1, -1.0}}, 1.0 / (dx * dx)));
  }

  EnergyMonitor h("H", 2 * n, dx);
  h.add_term(std::make_shared<AffineTerm>(0, q_phi));
  h.add_term(std::make_shared<AffineTerm>(n, shared(Matrix::identity(n))));
  h.add_term(std::make_shared<CosineWellTerm>(0, Vec(n, alpha)));

  Vec u0(2 * n, 0.0);
  for (std::size_t j = 0; j < n; ++j) u0[n + j] = 8.0 * sech(2.0 * x[j]);

  SemiDiscreteSystem sys{name,
                         {shared(stacked_symplectic(n)), MatrixClass::Skew},
                         std::move(h),
                         {},
                         pair_layout_1d(Boundary::Periodic, "phi", "pi", std::move(x))};
  require_structure(sys);
  return {std::move(sys), std::move(u0)};
}

// --- KdV -------------------------------------------------------------------
//
// u_t = -u_xxx - 6 u u_x: central first difference as S, energy
// -u^3 + (forward-difference u_x)^2 / 2 summed over the periodic grid.

Problem build_kdv(const ParamMap& given) {
  Params p("kdv", {{"n", 400.0}}, given);
  std::size_t n = p.count("n", 3);
  double dx = 40.0 / double(n);
  Vec x = uniform_coords(-20.0, dx, n);

  EnergyMonitor h("H", n, dx);
  h.add_term(std::make_shared<AffineTerm>(
      0, shared(Matrix::circulant(n, {{-1, -1.0}, {0, 2.0}, {1, -1.0}}, 1.0 / (dx * dx)))));
  h.add_term(std::make_shared<MonomialTerm>(0, n, 3, -1.0));

  Vec u0(n);
  for (std::size_t j = 0; j < n; ++j) u0[j] = 6.0 * sech(x[j]) * sech(x[j]);

  SemiDiscreteSystem sys{"kdv",
                         {shared(fd_operator(FdKind::PeriodicFirst, n, dx)), MatrixClass::Skew},
                         std::move(h),
                         {},
                         scalar_layout_1d(Boundary::Periodic, "u", std::move(x))};
  require_structure(sys);
  return {std::move(sys), std::move(u0)};
}

// --- cubic Schrodinger -----------------------------------------------------
//
// i u_t + u_xx + gamma |u|^2 u = 0 as a real system in (re; im).  With
// S = i/2 the energy carries twice the usual coefficients: each half gets
// the quadratic form 2 L / dx^2 and the quartic coupling gamma/2 (re^2 +
// im^2)^2.  Total probability is tracked as a second monitor.

Problem build_nls(const ParamMap& given) {
  Params p("nls", {{"n", 200.0}, {"gamma", 1.0}}, given);
  std::size_t n = p.count("n", 3);
  double gamma = p.real("gamma");
  double dx = 40.0 / double(n);
  Vec x = uniform_coords(-20.0, dx, n);

  auto q_block =
      shared(Matrix::circulant(n, {{-1, 2.0}, {0, -4.0}, {1, 2.0}}, 1.0 / (dx * dx)));

  EnergyMonitor h("H", 2 * n, dx);
  h.add_term(std::make_shared<AffineTerm>(0, q_block));
  h.add_term(std::make_shared<AffineTerm>(n, q_block));
  h.add_term(std::make_shared<RadialQuarticTerm>(0, n, 0.5 * gamma));

  EnergyMonitor prob("probability", 2 * n, dx);
  prob.add_term(std::make_shared<AffineTerm>(0, shared(Matrix::identity(2 * n, 2.0))));

  Vec u0(2 * n);
  for (std::size_t j = 0; j < n; ++j) {
    u0[j] = std::exp(-0.5 * (x[j] - 1.0) * (x[j] - 1.0));
    u0[n + j] = std::exp(-0.5 * x[j] * x[j]);
  }

  std::vector<EnergyMonitor> aux;
  aux.push_back(std::move(prob));
  SemiDiscreteSystem sys{"nls",
                         {shared(stacked_half_i(n)), MatrixClass::Skew},
                         std::move(h),
                         std::move(aux),
                         pair_layout_1d(Boundary::Periodic, "re", "im", std::move(x))};
  require_structure(sys);
  return {std::move(sys), std::move(u0)};
}

// --- linear Schrodinger ----------------------------------------------------
//
// i u_t = -u_xx + V(x) u with V = 1 - cos x on a 2 pi period.  Driven by the
// Hamiltonian quadratic form; the plain norm H2 = sum |u_j|^2 rides along as
// a second conserved monitor.

Problem build_linear_schrodinger(const ParamMap& given) {
  Params p("linear_schrodinger", {{"n", 50.0}}, given);
  std::size_t n = p.count("n", 3);
  double dx = 2.0 * kPi / double(n);
  Vec x = uniform_coords(-kPi, dx, n);

  BlockBuilder qb(n, n);
  qb.add(0, 0, fd_operator(FdKind::PeriodicLaplacian, n, dx), 2.0);
  for (std::size_t j = 0; j < n; ++j) qb.add_entry(j, j, -2.0 * (1.0 - std::cos(x[j])));
  auto q_block = shared(qb.build());

  EnergyMonitor h1("H1", 2 * n, dx);
  h1.add_term(std::make_shared<AffineTerm>(0, q_block));
  h1.add_term(std::make_shared<AffineTerm>(n, q_block));

  EnergyMonitor h2("H2", 2 * n, dx);
  h2.add_term(std::make_shared<AffineTerm>(0, shared(Matrix::identity(2 * n, 2.0))));

  Vec u0(2 * n, 0.0);
  for (std::size_t j = 0; j < n; ++j) u0[j] = std::exp(-0.25 * x[j] * x[j]);

  std::vector<EnergyMonitor> aux;
  aux.push_back(std::move(h2));
  SemiDiscreteSystem sys{"linear_schrodinger",
                         {shared(stacked_half_i(n)), MatrixClass::Skew},
                         std::move(h1),
                         std::move(aux),
                         pair_layout_1d(Boundary::Periodic, "re", "im", std::move(x))};
  require_structure(sys);
  return {std::move(sys), std::move(u0)};
}

// --- 1D Maxwell ------------------------------------------------------------
//
// E_t = c B_x, B_t = c E_x on [0,1] with perfectly conducting ends
// (E_0 = E_N = 0).  Unknowns are the interior E values and all B values;
// the trapezoidal end weights on B make the half-sum energy symmetric
// against the doubled end couplings in G.

Problem build_maxwell1d(const ParamMap& given) {
  Params p("maxwell1d", {{"n", 100.0}, {"c", 1.0}}, given);
  std::size_t cells = p.count("n", 3);
  double c = p.real("c");
  double dx = 1.0 / double(cells);
  std::size_t ne = cells - 1, nb = cells + 1;

  Matrix g = fd_operator(FdKind::Maxwell1dG, cells, dx);
  BlockBuilder sb(ne + nb, ne + nb);
  sb.add(0, ne, g);
  sb.add_transposed(ne, 0, g, -1.0);

  Vec bw(nb, c);
  bw.front() = bw.back() = 0.5 * c;
  EnergyMonitor h("H", ne + nb, dx);
  h.add_term(std::make_shared<AffineTerm>(0, shared(Matrix::identity(ne, c))));
  h.add_term(std::make_shared<AffineTerm>(ne, shared(Matrix::diagonal(std::move(bw)))));

  Vec xe = uniform_coords(0.0, dx, ne, 1);
  Vec xb = uniform_coords(0.0, dx, nb);
  Vec u0(ne + nb);
  auto bump = [](double x) { return std::exp(-100.0 * (x - 0.5) * (x - 0.5)); };
  for (std::size_t j = 0; j < ne; ++j) u0[j] = bump(xe[j]);
  for (std::size_t j = 0; j < nb; ++j) u0[ne + j] = bump(xb[j]);

  StateLayout layout;
  layout.kind = StateLayout::Kind::StackedPair;
  layout.boundary = Boundary::Dirichlet;
  layout.components = {{"E", 0, ne, std::move(xe)}, {"B", ne, nb, std::move(xb)}};

  SemiDiscreteSystem sys{"maxwell1d",
                         {shared(sb.build()), MatrixClass::Skew},
                         std::move(h),
                         {},
                         std::move(layout)};
  require_structure(sys);
  return {std::move(sys), std::move(u0)};
}

// --- 3D Maxwell ------------------------------------------------------------
//
// B_t = -curl E, E_t = curl B on the unit periodic cube, state (B; E) with
// three lexicographic component blocks each.  The central-difference curl
// block A is symmetric, so S = [[0,-A],[A,0]] with the plain field energy
// drives the system, and the helicity-like form (B'AB + E'AE) c/2 is a
// second invariant of the same flow.  Initial data is seeded uniform noise.

Problem build_maxwell3d(const ParamMap& given, std::uint64_t seed) {
  Params p("maxwell3d", {{"n", 10.0}, {"c", 1.0}}, given);
  std::size_t n = p.count("n", 2);
  double c = p.real("c");
  double dx = 1.0 / double(n);
  std::size_t m = n * n * n, half = 3 * m, dim = 6 * m;

  Matrix a = curl_matrix_3d(n, dx);
  BlockBuilder sb(dim, dim);
  sb.add(0, half, a, -1.0);
  sb.add(half, 0, a, 1.0);

  EnergyMonitor h2("H2", dim, dx * dx * dx);
  h2.add_term(std::make_shared<AffineTerm>(0, shared(Matrix::identity(dim, c))));

  BlockBuilder qb(dim, dim);
  qb.add(0, 0, a, c);
  qb.add(half, half, a, c);
  EnergyMonitor h1("H1", dim, dx * dx * dx);
  h1.add_term(std::make_shared<AffineTerm>(0, shared(qb.build())));

  std::mt19937_64 gen(seed);
  Vec u0(dim);
  for (double& v : u0) v = double(gen() >> 11) * 0x1.0p-53;

  StateLayout layout;
  layout.kind = StateLayout::Kind::Field3D;
  layout.boundary = Boundary::Periodic;
  layout.grid_n = unsigned(n);
  layout.axis1 = uniform_coords(0.0, dx, n);
  const char* names[] = {"B1", "B2", "B3", "E1", "E2", "E3"};
  for (std::size_t k = 0; k < 6; ++k) layout.components.push_back({names[k], k * m, m, {}});

  std::vector<EnergyMonitor> aux;
  aux.push_back(std::move(h1));
  SemiDiscreteSystem sys{"maxwell3d",
                         {shared(sb.build()), MatrixClass::Skew},
                         std::move(h2),
                         std::move(aux),
                         std::move(layout)};
  require_structure(sys);
  return {std::move(sys), std::move(u0)};
}

// --- 2D wave on a GLL element ---------------------------------------------
//
// phi_tt = laplace phi - phi^3 on [-1,1]^2, discretized with one nodal
// spectral element: mass matrix diag(w (x) w), stiffness G (x) W + W (x) G
// with G = d' diag(w) d, quartic potential weighted by the quadrature.
// S carries the inverse mass so the energy stays a plain quadratic form.

Problem build_wave2d(const ParamMap& given) {
  Params par("wave2d_gll", {{"degree", 5.0}}, given);
  unsigned p = unsigned(par.count("degree", 1));
  GllBasis basis = gll_basis(p);
  std::size_t np = p + 1, m = np * np;

  DenseMat g(np, np);
  for (std::size_t k = 0; k < np; ++k)
    for (std::size_t l = 0; l < np; ++l) {
      double s = 0.0;
      for (std::size_t j = 0; j < np; ++j) s += basis.weights[j] * basis.diff.at(j, k) * basis.diff.at(j, l);
      g.at(k, l) = s;
    }

  Vec w2(m);
  for (std::size_t j1 = 0; j1 < np; ++j1)
    for (std::size_t j2 = 0; j2 < np; ++j2) w2[j1 * np + j2] = basis.weights[j1] * basis.weights[j2];

  Vec qa(m * m, 0.0);
  for (std::size_t j2 = 0; j2 < np; ++j2)
    for (std::size_t k = 0; k < np; ++k)
      for (std::size_t l = 0; l < np; ++l)
        qa[(k * np + j2) * m + (l * np + j2)] += g.at(k, l) * basis.weights[j2];
  for (std::size_t j1 = 0; j1 < np; ++j1)
    for (std::size_t k = 0; k < np; ++k)
      for (std::size_t l = 0; l < np; ++l)
        qa[(j1 * np + k) * m + (j1 * np + l)] += basis.weights[j1] * g.at(k, l);

  EnergyMonitor h("H", 2 * m, 1.0);
  h.add_term(std::make_shared<AffineTerm>(0, shared(Matrix::dense(m, m, std::move(qa)))));
  h.add_term(std::make_shared<AffineTerm>(m, shared(Matrix::diagonal(w2))));
  Vec quartic = w2;
  for (double& v : quartic) v *= 0.25;
  h.add_term(std::make_shared<MonomialTerm>(0, std::move(quartic), 4));

  BlockBuilder sb(2 * m, 2 * m);
  for (std::size_t i = 0; i < m; ++i) {
    sb.add_entry(i, m + i, 1.0 / w2[i]);
    sb.add_entry(m + i, i, -1.0 / w2[i]);
  }

  Vec u0(2 * m, 0.0);
  for (std::size_t j1 = 0; j1 < np; ++j1)
    for (std::size_t j2 = 0; j2 < np; ++j2)
      u0[j1 * np + j2] = sech(10.0 * basis.nodes[j1]) * sech(10.0 * basis.nodes[j2]);

  StateLayout layout;
  layout.kind = StateLayout::Kind::StackedPair;
  layout.boundary = Boundary::None;
  layout.axis1 = basis.nodes;
  layout.axis2 = basis.nodes;
  layout.components = {{"phi", 0, m, {}}, {"pi", m, m, {}}};

  SemiDiscreteSystem sys{"wave2d_gll",
                         {shared(sb.build()), MatrixClass::Skew},
                         std::move(h),
                         {},
                         std::move(layout)};
  require_structure(sys);
  return {std::move(sys), std::move(u0)};
}

// --- Allen-Cahn ------------------------------------------------------------
//
// u_t = -grad H with the double-well energy and Neumann ends, all N+1 nodal
// values unknown.  The difference-energy matrix is the variational G'G form,
// a second-difference band whose corner entries are 1, not 2 — that closure
// is what encodes the zero-flux condition without ghost nodes.

Problem build_allen_cahn(const ParamMap& given) {
  Params p("allen_cahn", {{"n", 100.0}, {"d", 0.001}}, given);
  std::size_t cells = p.count("n", 2);
  double d = p.real("d");
  std::size_t dim = cells + 1;
  double dx = 1.0 / double(cells);
  Vec x = uniform_coords(0.0, dx, dim);

  std::vector<Triplet> tri;
  for (std::size_t j = 0; j < dim; ++j)
    tri.push_back({j, j, (j == 0 || j == cells) ? 1.0 : 2.0});
  for (std::size_t j = 0; j + 1 < dim; ++j) {
    tri.push_back({j, j + 1, -1.0});
    tri.push_back({j + 1, j, -1.0});
  }

  EnergyMonitor h("H", dim, dx);
  h.add_term(std::make_shared<AffineTerm>(0, shared(Matrix::sparse(dim, dim, tri, d / (dx * dx)))));
  h.add_term(std::make_shared<MonomialTerm>(0, dim, 2, -0.5));
  h.add_term(std::make_shared<MonomialTerm>(0, dim, 4, 0.25));

  Vec u0(dim);
  for (std::size_t j = 0; j < dim; ++j) u0[j] = std::cos(kPi * x[j]);

  SemiDiscreteSystem sys{"allen_cahn",
                         {shared(Matrix::identity(dim, -1.0)), MatrixClass::NegativeSemidefinite},
                         std::move(h),
                         {},
                         scalar_layout_1d(Boundary::Neumann, "u", std::move(x))};
  require_structure(sys);
  return {std::move(sys), std::move(u0)};
}

// --- Cahn-Hilliard ---------------------------------------------------------
//
// u_t = (laplace) grad H on the periodic unit interval: the structure matrix
// itself is the discrete Laplacian (negative semidefinite with a mass-like
// kernel), the energy the usual p u^2/2 + q u_x^2/2 + r u^4/4 sum.

Problem build_cahn_hilliard(const ParamMap& given) {
  Params par("cahn_hilliard", {{"n", 50.0}, {"p", -1.0}, {"q", -0.001}, {"r", 1.0}}, given);
  std::size_t n = par.count("n", 3);
  double p = par.real("p"), q = par.real("q"), r = par.real("r");
  double dx = 1.0 / double(n);
  Vec x = uniform_coords(0.0, dx, n);

  BlockBuilder qb(n, n);
  qb.add_identity(0, 0, n, p);
  qb.add(0, 0, fd_operator(FdKind::PeriodicLaplacian, n, dx), q);

  EnergyMonitor h("H", n, dx);
  h.add_term(std::make_shared<AffineTerm>(0, shared(qb.build())));
  h.add_term(std::make_shared<MonomialTerm>(0, n, 4, 0.25 * r));

  Vec u0(n);
  for (std::size_t j = 0; j < n; ++j)
    u0[j] = 0.1 * std::sin(2.0 * kPi * x[j]) + 0.01 * std::cos(4.0 * kPi * x[j]) +
            0.06 * std::sin(4.0 * kPi * x[j]) + 0.02 * std::cos(10.0 * kPi * x[j]);

  SemiDiscreteSystem sys{
      "cahn_hilliard",
      {shared(fd_operator(FdKind::PeriodicLaplacian, n, dx)), MatrixClass::NegativeSemidefinite},
      std::move(h),
      {},
      scalar_layout_1d(Boundary::Periodic, "u", std::move(x))};
  require_structure(sys);
  return {std::move(sys), std::move(u0)};
}

// --- Ginzburg-Landau -------------------------------------------------------
//
// u_t = (d/dx + eps d^2/dx^2) grad H on [-5,5] with clamped ends.  The
// structure matrix pairs the skew advection band with the strictly negative
// viscous band, so it is dissipative but not symmetric.  The quadratic part
// of H is 6 I minus a second-difference band whose first diagonal entry is 1
// (the left-end difference is excluded from the energy sum).

Problem build_ginzburg_landau(const ParamMap& given) {
  Params p("ginzburg_landau", {{"n", 50.0}, {"eps", 0.001}}, given);
  std::size_t cells = p.count("n", 4);
  double eps = p.real("eps");
  std::size_t m = cells - 1;
  double dx = 10.0 / double(cells);
  Vec x = uniform_coords(-5.0, dx, m, 1);

  BlockBuilder nb(m, m);
  nb.add(0, 0, fd_operator(FdKind::DirichletFirst, m, dx));
  nb.add(0, 0, fd_operator(FdKind::DirichletLaplacian, m, dx), eps);

  double idx2 = 1.0 / (dx * dx);
  BlockBuilder qb(m, m);
  for (std::size_t j = 0; j < m; ++j) qb.add_entry(j, j, 6.0 - (j == 0 ? 1.0 : 2.0) * idx2);
  for (std::size_t j = 0; j + 1 < m; ++j) {
    qb.add_entry(j, j + 1, idx2);
    qb.add_entry(j + 1, j, idx2);
  }

  EnergyMonitor h("H", m, dx);
  h.add_term(std::make_shared<AffineTerm>(0, shared(qb.build())));
  h.add_term(std::make_shared<MonomialTerm>(0, m, 4, -0.25));

  Vec u0(m);
  for (std::size_t j = 0; j < m; ++j) u0[j] = std::exp(-100.0 * (x[j] - 0.5) * (x[j] - 0.5));

  SemiDiscreteSystem sys{"ginzburg_landau",
                         {shared(nb.build()), MatrixClass::NegativeSemidefinite},
                         std::move(h),
                         {},
                         scalar_layout_1d(Boundary::Dirichlet, "u", std::move(x))};
  require_structure(sys);
  return {std::move(sys), std::move(u0)};
}

// --- heat ------------------------------------------------------------------
//
// u_t = u_xx with homogeneous Dirichlet ends, driven as S = Laplacian with
// H2 = sum u^2/2.  The Dirichlet difference energy H1 decays along the same
// flow and is tracked as a second monitor.

Problem build_heat(const ParamMap& given) {
  Params p("heat", {{"n", 50.0}}, given);
  std::size_t cells = p.count("n", 4);
  std::size_t m = cells - 1;
  double dx = 1.0 / double(cells);
  Vec x = uniform_coords(0.0, dx, m, 1);

  EnergyMonitor h2("H2", m, dx);
  h2.add_term(std::make_shared<AffineTerm>(0, shared(Matrix::identity(m))));

  EnergyMonitor h1("H1", m, dx);
  h1.add_term(std::make_shared<AffineTerm>(
      0, shared(Matrix::banded(m, {{-1, -1.0}, {0, 2.0}, {1, -1.0}}, 1.0 / (dx * dx)))));

  Vec u0(m);
  for (std::size_t j = 0; j < m; ++j) u0[j] = x[j] * (1.0 - x[j]);

  std::vector<EnergyMonitor> aux;
  aux.push_back(std::move(h1));
  SemiDiscreteSystem sys{
      "heat",
      {shared(fd_operator(FdKind::DirichletLaplacian, m, dx)), MatrixClass::NegativeSemidefinite},
      std::move(h2),
      std::move(aux),
      scalar_layout_1d(Boundary::Dirichlet, "u", std::move(x))};
  require_structure(sys);
  return {std::move(sys), std::move(u0)};
}

}  // namespace

const std::vector<ProblemInfo>& problem_catalog() {
  static const std::vector<ProblemInfo> catalog = {
      {"sine_gordon_fd", "sine-Gordon on [-20,20], second-difference Laplacian",
       {{"n", 200.0}, {"alpha", 1.0}}, true, false},
      {"sine_gordon_spectral", "sine-Gordon with the Fourier collocation Laplacian",
       {{"n", 200.0}, {"alpha", 1.0}}, true, false},
      {"kdv", "Korteweg-de Vries soliton on a periodic interval",
       {{"n", 400.0}}, true, false},
      {"nls", "cubic Schrodinger in stacked real/imaginary parts; tracks probability",
       {{"n", 200.0}, {"gamma", 1.0}}, true, false},
      {"linear_schrodinger", "Schrodinger with potential 1 - cos x; two quadratic invariants",
       {{"n", 50.0}}, true, false},
      {"maxwell1d", "1D Maxwell cavity with conducting ends",
       {{"n", 100.0}, {"c", 1.0}}, true, false},
      {"maxwell3d", "periodic 3D Maxwell with energy and helicity monitors, random data",
       {{"n", 10.0}, {"c", 1.0}}, true, true},
      {"wave2d_gll", "2D wave with quartic potential on one Gauss-Lobatto element",
       {{"degree", 5.0}}, true, false},
      {"allen_cahn", "Allen-Cahn double well with Neumann ends",
       {{"n", 100.0}, {"d", 0.001}}, false, false},
      {"cahn_hilliard", "periodic Cahn-Hilliard driven through the Laplacian",
       {{"n", 50.0}, {"p", -1.0}, {"q", -0.001}, {"r", 1.0}}, false, false},
      {"ginzburg_landau", "advective Ginzburg-Landau with small viscosity",
       {{"n", 50.0}, {"eps", 0.001}}, false, false},
      {"heat", "Dirichlet heat equation with two decaying monitors",
       {{"n", 50.0}}, false, false},
  };
  return catalog;
}

const ProblemInfo* find_problem(const std::string& name) {
  for (const auto& info : problem_catalog())
    if (info.name == name) return &info;
  return nullptr;
}

Problem build_problem(const std::string& name, const ParamMap& params, std::uint64_t seed) {
  if (name == "sine_gordon_fd") return build_sine_gordon(params, false);
  if (name == "sine_gordon_spectral") return build_sine_gordon(params, true);
  if (name == "kdv") return build_kdv(params);
  if (name == "nls") return build_nls(params);
  if (name == "linear_schrodinger") return build_linear_schrodinger(params);
  if (name == "maxwell1d") return build_maxwell1d(params);
  if (name == "maxwell3d") return build_maxwell3d(params, seed);
  if (name == "wave2d_gll") return build_wave2d(params);
  if (name == "allen_cahn") return build_allen_cahn(params);
  if (name == "cahn_hilliard") return build_cahn_hilliard(params);
  if (name == "ginzburg_landau") return build_ginzburg_landau(params);
  if (name == "heat") return build_heat(params);
  throw std::invalid_argument("unknown problem '" + name + "'");
}

}  // namespace avf

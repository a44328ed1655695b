#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "avf/kernels.hpp"

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

using namespace avf::kernels;

namespace {

std::vector<double> random_vec(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = dist(gen);
  return v;
}

double worst_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double w = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) w = std::max(w, std::fabs(a[i] - b[i]));
  return w;
}

// Sizes straddling the dispatch grain so both the small-n serial shortcut and
// the genuinely threaded path get exercised.
const std::size_t sizes[] = {7, 1024, grain + 37};

}  // namespace

TEST_CASE("axpy and combine match naive loops and agree across flavors") {
  for (std::size_t n : sizes) {
    auto x = random_vec(n, 1), z = random_vec(n, 2);
    auto y0 = random_vec(n, 3);

    auto ys = y0, yp = y0;
    axpy_serial(0.37, x.data(), ys.data(), n);
    axpy_parallel(0.37, x.data(), yp.data(), n);
    CHECK(ys == yp);  // bit-identical, not just close
    for (std::size_t i = 0; i < n; ++i) CHECK(ys[i] == doctest::Approx(y0[i] + 0.37 * x[i]).epsilon(1e-15));

    std::vector<double> cs(n), cp(n);
    combine_serial(1.5, x.data(), -0.25, z.data(), cs.data(), n);
    combine_parallel(1.5, x.data(), -0.25, z.data(), cp.data(), n);
    CHECK(cs == cp);
    for (std::size_t i = 0; i < n; ++i) CHECK(cs[i] == doctest::Approx(1.5 * x[i] - 0.25 * z[i]).epsilon(1e-15));
  }
}

TEST_CASE("csr matvec agrees with a dense accumulation") {
  std::mt19937_64 gen(11);
  std::uniform_int_distribution<std::size_t> pick(0, 39);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);

  const std::size_t rows = 40, cols = 40;
  std::vector<std::vector<std::pair<std::uint32_t, double>>> by_row(rows);
  for (int e = 0; e < 300; ++e)
    by_row[pick(gen)].push_back({std::uint32_t(pick(gen)), dist(gen)});

  std::vector<std::size_t> rowptr(rows + 1, 0);
  std::vector<std::uint32_t> col;
  std::vector<double> val;
  std::vector<double> dense(rows * cols, 0.0);
  for (std::size_t i = 0; i < rows; ++i) {
    for (auto [j, v] : by_row[i]) {
      col.push_back(j);
      val.push_back(v);
      dense[i * cols + j] += v;
    }
    rowptr[i + 1] = col.size();
  }

  auto x = random_vec(cols, 5);
  std::vector<double> ys(rows, 0.0), yp(rows, 0.0), yd(rows, 0.0);
  csr_spmv_serial(rowptr.data(), col.data(), val.data(), rows, 0.8, x.data(), ys.data());
  csr_spmv_parallel(rowptr.data(), col.data(), val.data(), rows, 0.8, x.data(), yp.data());
  dense_gemv_serial(dense.data(), rows, cols, 0.8, x.data(), yd.data());
  CHECK(ys == yp);
  CHECK(worst_diff(ys, yd) < 1e-13);
}

TEST_CASE("stencil matvec wraps periodically and drops out-of-range taps when clipped") {
  const int off[] = {-2, 0, 1};
  const double c[] = {0.5, -1.0, 0.25};
  for (std::size_t n : sizes) {
    auto x = random_vec(n, 21);
    std::vector<double> yps(n, 0.0), ypp(n, 0.0), ycs(n, 0.0), ycp(n, 0.0);
    stencil_spmv_periodic_serial(off, c, 3, n, 2.0, x.data(), yps.data());
    stencil_spmv_periodic_parallel(off, c, 3, n, 2.0, x.data(), ypp.data());
    stencil_spmv_clipped_serial(off, c, 3, n, 2.0, x.data(), ycs.data());
    stencil_spmv_clipped_parallel(off, c, 3, n, 2.0, x.data(), ycp.data());
    CHECK(yps == ypp);
    CHECK(ycs == ycp);

    for (std::size_t i = 0; i < n; ++i) {
      double per = 0.0, clip = 0.0;
      for (int k = 0; k < 3; ++k) {
        std::ptrdiff_t j = std::ptrdiff_t(i) + off[k];
        std::ptrdiff_t jw = ((j % std::ptrdiff_t(n)) + std::ptrdiff_t(n)) % std::ptrdiff_t(n);
        per += c[k] * x[std::size_t(jw)];
        if (j >= 0 && j < std::ptrdiff_t(n)) clip += c[k] * x[std::size_t(j)];
      }
      CHECK(yps[i] == doctest::Approx(2.0 * per).epsilon(1e-14));
      CHECK(ycs[i] == doctest::Approx(2.0 * clip).epsilon(1e-14));
    }
  }
}

TEST_CASE("monomial gradient handles unit and per-entry weights") {
  for (std::size_t n : sizes) {
    auto u = random_vec(n, 31), w = random_vec(n, 32);
    for (int degree : {2, 3, 4, 6}) {
      std::vector<double> gs(n, 0.1), gp(n, 0.1);
      monomial_grad_serial(w.data(), degree, u.data(), gs.data(), n);
      monomial_grad_parallel(w.data(), degree, u.data(), gp.data(), n);
      CHECK(gs == gp);
      for (std::size_t i = 0; i < n; ++i)
        CHECK(gs[i] == doctest::Approx(0.1 + w[i] * degree * std::pow(u[i], degree - 1)).epsilon(1e-13));

      std::vector<double> g1(n, 0.0);
      monomial_grad_serial(nullptr, degree, u.data(), g1.data(), n);
      for (std::size_t i = 0; i < n; ++i)
        CHECK(g1[i] == doctest::Approx(degree * std::pow(u[i], degree - 1)).epsilon(1e-13));
    }
  }
}

TEST_CASE("sine kernels match std::sin and the exact segment average") {
  for (std::size_t n : sizes) {
    auto u = random_vec(n, 41), w = random_vec(n, 42);
    std::vector<double> gs(n, 0.0), gp(n, 0.0);
    sine_grad_serial(w.data(), u.data(), gs.data(), n);
    sine_grad_parallel(w.data(), u.data(), gp.data(), n);
    CHECK(gs == gp);
    for (std::size_t i = 0; i < n; ++i)
      CHECK(gs[i] == doctest::Approx(w[i] * std::sin(u[i])).epsilon(1e-15));

    // The segment average of sin over [a,b] is (cos a - cos b)/(b - a).
    auto a = random_vec(n, 43), b = random_vec(n, 44);
    std::vector<double> ss(n, 0.0), sp(n, 0.0);
    sine_segment_avg_serial(w.data(), a.data(), b.data(), ss.data(), n);
    sine_segment_avg_parallel(w.data(), a.data(), b.data(), sp.data(), n);
    CHECK(ss == sp);
    for (std::size_t i = 0; i < n; ++i) {
      double exact = std::fabs(b[i] - a[i]) > 1e-8
                         ? (std::cos(a[i]) - std::cos(b[i])) / (b[i] - a[i])
                         : std::sin(0.5 * (a[i] + b[i]));
      CHECK(ss[i] == doctest::Approx(w[i] * exact).epsilon(1e-10));
    }
  }
}

TEST_CASE("segment average degenerates to the integrand at a = b") {
  double a = 0.73, g = 0.0, w = 1.0;
  sine_segment_avg_serial(&w, &a, &a, &g, 1);
  CHECK(g == doctest::Approx(std::sin(a)).epsilon(1e-16));
}

TEST_CASE("sinc is continuous through zero") {
  CHECK(sinc(0.0) == 1.0);
  CHECK(sinc(1e-9) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(sinc(1e-4) == doctest::Approx(1.0 - 1e-8 / 6.0).epsilon(1e-14));
  CHECK(sinc(2.0) == doctest::Approx(std::sin(2.0) / 2.0).epsilon(1e-15));
  CHECK(sinc(-2.0) == sinc(2.0));
}

TEST_CASE("reductions use a fixed order and simple definitions") {
  auto x = random_vec(513, 51), y = random_vec(513, 52);
  double d = 0.0, m = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    d += x[i] * y[i];
    m = std::max(m, std::fabs(x[i]));
  }
  CHECK(dot(x.data(), y.data(), x.size()) == doctest::Approx(d).epsilon(1e-14));
  CHECK(max_abs(x.data(), x.size()) == m);
  CHECK(dot(x.data(), y.data(), 0) == 0.0);
  CHECK(max_abs(x.data(), 0) == 0.0);
}

TEST_CASE("auto dispatch follows the global policy") {
  const bool was = parallel_enabled();
  auto x = random_vec(grain + 5, 61);
  std::vector<double> a(x.size(), 0.0), b(x.size(), 0.0);

  set_parallel(false);
  CHECK_FALSE(parallel_enabled());
  axpy_auto(2.0, x.data(), a.data(), x.size());

  set_parallel(true);
  CHECK(parallel_enabled());
  axpy_auto(2.0, x.data(), b.data(), x.size());

  CHECK(a == b);  // policy changes routing, never results
  set_parallel(was);
}

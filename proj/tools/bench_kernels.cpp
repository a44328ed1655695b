// Serial vs OpenMP comparison for the hot element-wise and stencil kernels.
// Run with --benchmark_filter=... to narrow; sizes span cache-resident to
// memory-bound.

#include <cstddef>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "avf/kernels.hpp"

namespace {

std::vector<double> random_vec(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = dist(gen);
  return v;
}

template <bool Parallel>
void bench_axpy(benchmark::State& state) {
  std::size_t n = std::size_t(state.range(0));
  auto x = random_vec(n, 1);
  auto y = random_vec(n, 2);
  for (auto _ : state) {
    if constexpr (Parallel)
      avf::kernels::axpy_parallel(1e-3, x.data(), y.data(), n);
    else
      avf::kernels::axpy_serial(1e-3, x.data(), y.data(), n);
    benchmark::DoNotOptimize(y.data());
    benchmark::ClobberMemory();
  }
  state.SetBytesProcessed(int64_t(state.iterations()) * int64_t(n) * 24);
}

template <bool Parallel>
void bench_stencil(benchmark::State& state) {
  std::size_t n = std::size_t(state.range(0));
  const int off[] = {-1, 0, 1};
  const double c[] = {1.0, -2.0, 1.0};
  auto x = random_vec(n, 3);
  std::vector<double> y(n);
  for (auto _ : state) {
    if constexpr (Parallel)
      avf::kernels::stencil_spmv_periodic_parallel(off, c, 3, n, 1.0, x.data(), y.data());
    else
      avf::kernels::stencil_spmv_periodic_serial(off, c, 3, n, 1.0, x.data(), y.data());
    benchmark::DoNotOptimize(y.data());
  }
}

template <bool Parallel>
void bench_monomial_grad(benchmark::State& state) {
  std::size_t n = std::size_t(state.range(0));
  auto u = random_vec(n, 4);
  std::vector<double> g(n, 0.0);
  for (auto _ : state) {
    if constexpr (Parallel)
      avf::kernels::monomial_grad_parallel(nullptr, 4, u.data(), g.data(), n);
    else
      avf::kernels::monomial_grad_serial(nullptr, 4, u.data(), g.data(), n);
    benchmark::DoNotOptimize(g.data());
  }
}

template <bool Parallel>
void bench_sine_segment(benchmark::State& state) {
  std::size_t n = std::size_t(state.range(0));
  auto a = random_vec(n, 5);
  auto b = random_vec(n, 6);
  std::vector<double> g(n, 0.0);
  for (auto _ : state) {
    if constexpr (Parallel)
      avf::kernels::sine_segment_avg_parallel(nullptr, a.data(), b.data(), g.data(), n);
    else
      avf::kernels::sine_segment_avg_serial(nullptr, a.data(), b.data(), g.data(), n);
    benchmark::DoNotOptimize(g.data());
  }
}

void args(benchmark::internal::Benchmark* b) { b->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 20); }

BENCHMARK(bench_axpy<false>)->Name("axpy/serial")->Apply(args);
BENCHMARK(bench_axpy<true>)->Name("axpy/parallel")->Apply(args);
BENCHMARK(bench_stencil<false>)->Name("stencil_spmv/serial")->Apply(args);
BENCHMARK(bench_stencil<true>)->Name("stencil_spmv/parallel")->Apply(args);
BENCHMARK(bench_monomial_grad<false>)->Name("monomial_grad/serial")->Apply(args);
BENCHMARK(bench_monomial_grad<true>)->Name("monomial_grad/parallel")->Apply(args);
BENCHMARK(bench_sine_segment<false>)->Name("sine_segment_avg/serial")->Apply(args);
BENCHMARK(bench_sine_segment<true>)->Name("sine_segment_avg/parallel")->Apply(args);

}  // namespace

BENCHMARK_MAIN();

// Serial reference vs OpenMP kernels.

#include <benchmark/benchmark.h>

#include <cmath>
#include <complex>
#include <vector>

#include "esddfd/kernels.hpp"

using namespace esddfd::kernels;

namespace {

std::vector<double> field(std::size_t n) {
  std::vector<double> u(n);
  for (std::size_t i = 0; i < n; ++i) {
    u[i] = std::sin(0.001 * static_cast<double>(i));
  }
  return u;
}

template <Exec E>
void BM_Stencil(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto in = field(n);
  std::vector<double> out(n);
  const ExplicitStencil c{0.01, 0.4, -0.1};
  for (auto _ : state) {
    explicit_update(E, in, out, c, true);
    benchmark::DoNotOptimize(out.data());
    in.swap(out);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}

template <Exec E>
void BM_Dft(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto re = field(n);
  std::vector<std::complex<double>> in(re.begin(), re.end());
  std::vector<std::complex<double>> out(n);
  for (auto _ : state) {
    dft(E, in, out, -1);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n * n));
}

}  // namespace

BENCHMARK(BM_Stencil<Exec::Serial>)->RangeMultiplier(16)->Range(1 << 12, 1 << 20);
BENCHMARK(BM_Stencil<Exec::Parallel>)->RangeMultiplier(16)->Range(1 << 12, 1 << 20);
BENCHMARK(BM_Dft<Exec::Serial>)->RangeMultiplier(4)->Range(64, 4096);
BENCHMARK(BM_Dft<Exec::Parallel>)->RangeMultiplier(4)->Range(64, 4096);

BENCHMARK_MAIN();

// Serial reference kernels against their OpenMP counterparts.
//   ./bench_kernels --benchmark_filter=power_sum
// The thread count follows OMP_NUM_THREADS.

#include "powemb/kernels.hpp"

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

namespace k = powemb::kernels;

namespace {

std::vector<k::cplx> field(std::size_t n) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  std::vector<k::cplx> v(n);
  for (auto& z : v) z = {g(rng), g(rng)};
  return v;
}

std::vector<double> weights(std::size_t n) { return std::vector<double>(n, 0.5); }

template <double (*Fn)(std::span<const k::cplx>, std::span<const double>, double)>
void power_sum(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto f = field(n);
  const auto w = weights(n);
  for (auto _ : st) benchmark::DoNotOptimize(Fn(f, w, 3.0));
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(n));
}

template <void (*Fn)(std::span<k::cplx>, std::span<const double>)>
void multiply(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  auto f = field(n);
  const auto m = weights(n);
  for (auto _ : st) {
    Fn(f, m);
    benchmark::ClobberMemory();
  }
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(n));
}

template <void (*Fn)(std::span<double>, std::span<const k::cplx>, double, double)>
void lq_accumulate(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto b = field(n);
  std::vector<double> acc(n);
  for (auto _ : st) {
    Fn(acc, b, 0.5, 2.0);
    benchmark::ClobberMemory();
  }
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(n));
}

template <void (*Fn)(int, double, std::size_t, double, std::span<double>)>
void cell_weights(benchmark::State& st) {
  const auto N = static_cast<std::size_t>(st.range(0));
  std::vector<double> out(N * N);
  for (auto _ : st) {
    Fn(2, 16.0, N, 0.5, out);
    benchmark::ClobberMemory();
  }
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(N * N));
}

}  // namespace

BENCHMARK(power_sum<k::serial::weighted_power_sum>)->Name("power_sum/serial")->Range(1 << 12, 1 << 20);
BENCHMARK(power_sum<k::parallel::weighted_power_sum>)->Name("power_sum/parallel")->Range(1 << 12, 1 << 20);
BENCHMARK(multiply<k::serial::multiply>)->Name("multiply/serial")->Range(1 << 12, 1 << 20);
BENCHMARK(multiply<k::parallel::multiply>)->Name("multiply/parallel")->Range(1 << 12, 1 << 20);
BENCHMARK(lq_accumulate<k::serial::lq_accumulate>)->Name("lq_accumulate/serial")->Range(1 << 12, 1 << 20);
BENCHMARK(lq_accumulate<k::parallel::lq_accumulate>)->Name("lq_accumulate/parallel")->Range(1 << 12, 1 << 20);
BENCHMARK(cell_weights<k::serial::cell_weights>)->Name("cell_weights/serial")->Arg(256)->Arg(1024);
BENCHMARK(cell_weights<k::parallel::cell_weights>)->Name("cell_weights/parallel")->Arg(256)->Arg(1024);

BENCHMARK_MAIN();

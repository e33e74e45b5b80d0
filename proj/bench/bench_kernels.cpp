// Serial reference against the OpenMP kernels at sizes the solver and the
// coefficient oracle actually use.

#include <benchmark/benchmark.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "fkdv/kernels.hpp"

using namespace fkdv::kernels;

namespace {

std::vector<double> reals(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

std::vector<cplx> complexes(std::size_t n, unsigned seed) {
  const auto re = reals(n, seed), im = reals(n, seed + 1);
  std::vector<cplx> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = {re[i], im[i]};
  return v;
}

template <bool Parallel>
void BM_WeightedDistance(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto f = complexes(n, 1), g = complexes(n, 3);
  const auto w = reals(n, 5);
  std::vector<double> kappa(n);
  for (std::size_t k = 0; k < n; ++k) kappa[k] = 0.01 * double(k);
  for (auto _ : state) {
    const double d = Parallel ? omp::weighted_distance_sq(f, g, w, kappa, 0.3)
                              : serial::weighted_distance_sq(f, g, w, kappa, 0.3);
    benchmark::DoNotOptimize(d);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_Ifrk4Combine(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto e = complexes(n, 1), e2 = complexes(n, 3), a = complexes(n, 5), b = complexes(n, 7),
             c = complexes(n, 9), d = complexes(n, 11);
  auto u = complexes(n, 13);
  for (auto _ : state) {
    if (Parallel) {
      omp::ifrk4_combine(e, e2, u, a, b, c, d);
    } else {
      serial::ifrk4_combine(e, e2, u, a, b, c, d);
    }
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_CosineMoments(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto s = reals(n, 1);
  std::vector<double> table(n), moments(13);
  for (std::size_t j = 0; j < n; ++j) table[j] = std::cos(2 * std::numbers::pi * double(j) / double(n));
  for (auto _ : state) {
    if (Parallel) {
      omp::cosine_moments<double>(s, table, moments);
    } else {
      serial::cosine_moments<double>(s, table, moments);
    }
    benchmark::DoNotOptimize(moments.data());
  }
}

template <bool Parallel>
void BM_ToeplitzScan(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  std::vector<double> w(2 * m + 1);
  for (int i = -m; i <= m; ++i) w[std::size_t(i + m)] = std::exp(-0.3 * i * i);
  for (auto _ : state) {
    const auto r = Parallel ? omp::toeplitz_minor_scan(w) : serial::toeplitz_minor_scan(w);
    benchmark::DoNotOptimize(r.min_normalized);
  }
}

template <bool Parallel>
void BM_ConservationLaws(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto u = reals(n, 1), u1 = reals(n, 2), u2 = reals(n, 3), u3 = reals(n, 4), u4 = reals(n, 5);
  std::vector<double> f(n), g(n), fs(n), gs(n);
  for (auto _ : state) {
    if (Parallel) {
      omp::conservation_laws(1.0, 1.0, 1.0, 1.0, u, u1, u2, u3, u4, f, g, fs, gs);
    } else {
      serial::conservation_laws(1.0, 1.0, 1.0, 1.0, u, u1, u2, u3, u4, f, g, fs, gs);
    }
    benchmark::DoNotOptimize(f.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_WeightedDistance<false>)->Name("weighted_distance/serial")->RangeMultiplier(8)->Range(512, 1 << 18);
BENCHMARK(BM_WeightedDistance<true>)->Name("weighted_distance/omp")->RangeMultiplier(8)->Range(512, 1 << 18);
BENCHMARK(BM_Ifrk4Combine<false>)->Name("ifrk4_combine/serial")->RangeMultiplier(8)->Range(512, 1 << 18);
BENCHMARK(BM_Ifrk4Combine<true>)->Name("ifrk4_combine/omp")->RangeMultiplier(8)->Range(512, 1 << 18);
BENCHMARK(BM_CosineMoments<false>)->Name("cosine_moments/serial")->Arg(4096)->Arg(1 << 16);
BENCHMARK(BM_CosineMoments<true>)->Name("cosine_moments/omp")->Arg(4096)->Arg(1 << 16);
BENCHMARK(BM_ToeplitzScan<false>)->Name("toeplitz_minor_scan/serial")->Arg(12)->Arg(48);
BENCHMARK(BM_ToeplitzScan<true>)->Name("toeplitz_minor_scan/omp")->Arg(12)->Arg(48);
BENCHMARK(BM_ConservationLaws<false>)->Name("conservation_laws/serial")->Arg(2048)->Arg(1 << 17);
BENCHMARK(BM_ConservationLaws<true>)->Name("conservation_laws/omp")->Arg(2048)->Arg(1 << 17);

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "shapfs/features.hpp"
#include "shapfs/wavelet.hpp"

namespace {

std::vector<double> random_signal(std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> g;
  std::vector<double> v(n);
  for (auto& x : v) x = g(rng);
  return v;
}

void BM_Dwt6Level(benchmark::State& state) {
  const auto sig = random_signal(static_cast<std::size_t>(state.range(0)), 3);
  shapfs::WaveletSpec spec;
  spec.family = shapfs::WaveletFamily::db8;
  for (auto _ : state) {
    auto pyr = shapfs::dwt_decompose(sig, spec);
    benchmark::DoNotOptimize(pyr);
  }
}
BENCHMARK(BM_Dwt6Level)->Arg(4096)->Arg(65536);

void BM_StatFeatures(benchmark::State& state) {
  const auto sig = random_signal(static_cast<std::size_t>(state.range(0)), 5);
  for (auto _ : state) {
    auto stats = shapfs::stat_features(sig);
    benchmark::DoNotOptimize(stats);
  }
}
BENCHMARK(BM_StatFeatures)->Arg(1024)->Arg(16384);

}  // namespace

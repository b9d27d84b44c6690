#include <benchmark/benchmark.h>

#include "shapfs/game.hpp"
#include "shapfs/selection.hpp"
#include "shapfs/shapley.hpp"

namespace {

void BM_ExactShapley(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto game = shapfs::TableGame::random(n, 7);
  for (auto _ : state) {
    auto phi = shapfs::exact_shapley(game);
    benchmark::DoNotOptimize(phi);
  }
}
BENCHMARK(BM_ExactShapley)->Arg(8)->Arg(12)->Arg(14);

void BM_GaShapley(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto game = shapfs::WeightedInteractionGame::random(n, 11);
  shapfs::SelectionConfig cfg;
  cfg.ga.population_size = 8;
  cfg.ga.samples_per_size = 40;
  cfg.ga.max_coalition_size = std::min(n, 8);
  for (auto _ : state) {
    auto report = shapfs::run_shapley_ga(game, cfg);
    benchmark::DoNotOptimize(report);
  }
}
BENCHMARK(BM_GaShapley)->Arg(16)->Arg(32)->Arg(64);

}  // namespace

BENCHMARK_MAIN();

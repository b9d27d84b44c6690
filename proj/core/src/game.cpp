#include "shapfs/game.hpp"

namespace shapfs {

WeightedInteractionGame WeightedInteractionGame::random(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uw(0.05, 1.0);
  std::uniform_int_distribution<int> up(0, n - 1);
  std::vector<double> w(static_cast<std::size_t>(n));
  for (auto& x : w) x = uw(rng);
  std::vector<std::pair<std::pair<int, int>, double>> pairs;
  const int n_pairs = n / 2;
  for (int k = 0; k < n_pairs; ++k) {
    int a = up(rng), b = up(rng);
    if (a == b) b = (b + 1) % n;
    pairs.push_back({{a, b}, uw(rng)});
  }
  return WeightedInteractionGame(std::move(w), std::move(pairs));
}

}  // namespace shapfs

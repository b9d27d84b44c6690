#include "shapfs/shapley.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>

namespace shapfs {

std::vector<int> ShapleyReport::ranking() const {
  std::vector<int> idx(phi.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](int a, int b) { return phi[a] > phi[b]; });
  return idx;
}

double marginal_contribution(const GameOracle& game, const Coalition& t, int i) {
  const int n = game.player_count();
  if (i < 0 || i >= n) throw std::out_of_range("marginal_contribution: feature index out of range");
  if (t.contains(i)) throw std::invalid_argument("marginal_contribution: focal feature already in coalition");
  return game.value(t.with(i)) - game.value(t);
}

std::vector<double> exact_shapley(const GameOracle& game, int max_players) {
  const int n = game.player_count();
  if (n < 1) throw std::invalid_argument("exact_shapley: empty game");
  if (n > max_players)
    throw std::invalid_argument("exact_shapley: player count " + std::to_string(n) +
                                " exceeds exact-mode ceiling " + std::to_string(max_players));

  // Precompute nu over all masks, then sweep each feature.
  const std::size_t total = std::size_t{1} << n;
  std::vector<double> v(total);
  for (std::size_t m = 0; m < total; ++m)
    v[m] = game.value(Coalition::from_mask(n, m));

  std::vector<double> fact(static_cast<std::size_t>(n) + 1, 1.0);
  for (int k = 1; k <= n; ++k) fact[static_cast<std::size_t>(k)] = fact[static_cast<std::size_t>(k - 1)] * k;
  std::vector<double> weight(static_cast<std::size_t>(n));
  for (int s = 0; s < n; ++s)
    weight[static_cast<std::size_t>(s)] =
        fact[static_cast<std::size_t>(s)] * fact[static_cast<std::size_t>(n - s - 1)] / fact[static_cast<std::size_t>(n)];

  std::vector<double> phi(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    const std::uint64_t bit = std::uint64_t{1} << i;
    for (std::size_t m = 0; m < total; ++m) {
      if (m & bit) continue;
      const int card = std::popcount(m);
      phi[static_cast<std::size_t>(i)] +=
          weight[static_cast<std::size_t>(card)] * (v[m | bit] - v[m]);
    }
  }
  return phi;
}

std::vector<double> truncated_shapley(
    const std::map<std::pair<int, int>, double>& per_size_means, int n_f,
    int max_size) {
  if (max_size < 1) throw std::invalid_argument("truncated_shapley: max_size must be positive");
  std::vector<double> phi(static_cast<std::size_t>(n_f), 0.0);
  for (int i = 0; i < n_f; ++i) {
    double s = 0;
    for (int t = 0; t < max_size; ++t) {
      auto it = per_size_means.find({i, t});
      if (it == per_size_means.end())
        throw std::invalid_argument("truncated_shapley: missing mean for feature " +
                                    std::to_string(i) + " size " + std::to_string(t));
      s += it->second;
    }
    phi[static_cast<std::size_t>(i)] = s / max_size;
  }
  return phi;
}

bool verify_game_properties(const GameOracle& game, GameProperty mode,
                            int max_players, double tol) {
  const int n = game.player_count();
  if (n > max_players)
    throw std::invalid_argument("verify_game_properties: player count exceeds exact-mode ceiling");
  const std::uint64_t total = std::uint64_t{1} << n;
  std::vector<double> v(static_cast<std::size_t>(total));
  for (std::uint64_t m = 0; m < total; ++m)
    v[static_cast<std::size_t>(m)] = game.value(Coalition::from_mask(n, m));

  for (std::uint64_t s = 0; s < total; ++s) {
    for (std::uint64_t t = 0; t < total; ++t) {
      if (mode == GameProperty::convex) {
        if (v[static_cast<std::size_t>(s | t)] + v[static_cast<std::size_t>(s & t)] <
            v[static_cast<std::size_t>(s)] + v[static_cast<std::size_t>(t)] - tol)
          return false;
      } else {
        if ((s & t) != 0) continue;
        if (v[static_cast<std::size_t>(s | t)] <
            v[static_cast<std::size_t>(s)] + v[static_cast<std::size_t>(t)] - tol)
          return false;
      }
    }
  }
  return true;
}

void write_ranking(const std::string& path, const std::vector<double>& phi,
                   const std::vector<std::string>& names, int top_k) {
  if (!names.empty() && names.size() != phi.size())
    throw std::invalid_argument("write_ranking: name count mismatch");
  std::vector<int> idx(phi.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](int a, int b) { return phi[static_cast<std::size_t>(a)] > phi[static_cast<std::size_t>(b)]; });
  if (top_k >= 0 && static_cast<std::size_t>(top_k) < idx.size()) idx.resize(static_cast<std::size_t>(top_k));

  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_ranking: cannot open " + path);
  out << "feature_index,feature_name,shapley_value,rank\n";
  out.precision(17);
  int rank = 1;
  for (int i : idx) {
    const std::string& name =
        names.empty() ? ("f" + std::to_string(i)) : names[static_cast<std::size_t>(i)];
    out << i << ',' << name << ',' << phi[static_cast<std::size_t>(i)] << ',' << rank++ << '\n';
  }
}

}  // namespace shapfs

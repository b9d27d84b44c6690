#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "shapfs/game.hpp"

namespace shapfs {

/// Per-feature Shapley estimates plus the per-size adjusted means and
/// sampling metadata they were combined from.
struct ShapleyReport {
  std::vector<double> phi;                         // one per feature
  std::map<std::pair<int, int>, double> size_means;  // (i, t) -> adjusted mean
  std::map<std::pair<int, int>, int> size_counts;    // (i, t) -> sample count
  std::uint64_t total_evaluations = 0;               // nu calls, before cache dedup
  std::uint64_t distinct_evaluations = 0;            // cache misses, when cached

  std::vector<int> ranking() const;  // feature indices, best first
};

/// nu(T + i) - nu(T). Rejects i in T and out-of-range i.
double marginal_contribution(const GameOracle& game, const Coalition& t, int i);

/// Full-enumeration Shapley value, weight |T|!(n-|T|-1)!/n!.
/// Guarded by a ceiling on the player count (2^n coalition values).
std::vector<double> exact_shapley(const GameOracle& game, int max_players = 16);

/// phi_hat_i = average of the per-size means over t in [0, max_size).
/// Requires an entry for every (i, t) pair.
std::vector<double> truncated_shapley(
    const std::map<std::pair<int, int>, double>& per_size_means, int n_f,
    int max_size);

enum class GameProperty { convex, superadditive };

/// Exhaustive check of convexity or super-additivity over all coalition pairs.
bool verify_game_properties(const GameOracle& game, GameProperty mode,
                            int max_players = 16, double tol = 1e-12);

/// Writes "feature_index,feature_name,shapley_value,rank" rows, best first.
void write_ranking(const std::string& path, const std::vector<double>& phi,
                   const std::vector<std::string>& names, int top_k = -1);

}  // namespace shapfs

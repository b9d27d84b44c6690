#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "shapfs/coalition.hpp"
#include "shapfs/game.hpp"

namespace shapfs {

/// Binary vector of length n_f - 1 with exactly `target_ones` ones,
/// encoding a fixed-size coalition that excludes the focal feature.
struct Chromosome {
  std::vector<std::uint8_t> bits;
  int focal = 0;
  int target_ones = 0;

  int length() const { return static_cast<int>(bits.size()); }
  int popcount() const;
  bool valid() const;
};

struct GaConfig {
  int population_size = 20;     // n_p
  int samples_per_size = 100;   // n_G
  int max_coalition_size = 20;  // strata t = 0 .. max_coalition_size - 1
  std::uint64_t seed = 0;
  double fitness_floor = 1e-6;  // epsilon added to shifted roulette weights

  void validate(int n_f) const;
};

/// GA output for one (focal feature, coalition size) stratum.
struct SampleSet {
  int focal = 0;
  int size = 0;
  std::vector<std::pair<Coalition, double>> samples;  // (coalition, marginal)

  std::vector<double> marginals() const;
};

using Rng = std::mt19937_64;

/// Deterministic per-(i, t) stream seed derived from the master seed.
std::uint64_t task_seed(std::uint64_t master, int focal, int size);

/// Bit j maps to feature j below the focal index and j + 1 at or above it.
Coalition chromosome_to_coalition(const Chromosome& chr, int n_f);

/// Marginal contribution of the focal feature over the encoded coalition.
double fitness(const GameOracle& game, const Chromosome& chr);

/// Two distinct indices drawn with probability proportional to
/// (f - min_f + floor); the second draw excludes the first.
std::pair<int, int> roulette_select(const std::vector<double>& fitnesses,
                                    double floor, Rng& rng);

/// Swap a random aligned equal-popcount segment (proper, length >= 2)
/// between the parents; if none exists, reverse a random segment in each
/// parent independently. Cardinality is preserved either way.
std::pair<Chromosome, Chromosome> crossover(const Chromosome& p1,
                                            const Chromosome& p2, Rng& rng);

/// Flip one random 1 to 0 and one random 0 to 1; identity when no such
/// pair exists.
Chromosome mutate(const Chromosome& chr, Rng& rng);

/// Runs the GA loop for one (focal, size) stratum and returns all
/// evaluated chromosomes as samples. Size 0 and size n_f - 1 strata have a
/// single coalition and bypass the GA.
SampleSet collect_samples(const GameOracle& game, int focal, int size,
                          const GaConfig& cfg);

}  // namespace shapfs

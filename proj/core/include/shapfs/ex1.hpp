#pragma once

#include <cstdint>
#include <vector>

#include "shapfs/ga.hpp"

namespace shapfs {

/// Method-of-moments Extreme Type 1 fit of a sample set modeled as block
/// maxima. `location` is the recovered mean of the underlying per-draw
/// distribution, `scale` its standard deviation.
struct Ex1Fit {
  double location = 0;   // u
  double scale = 0;      // alpha, >= 0
  std::uint64_t block_size = 1;  // M
  double gamma = 0;      // mean constant used for the fit
};

struct Ex1Config {
  enum class Mode { ex1, raw };
  Mode mode = Mode::ex1;
  double gamma = 0.5772156649015329;  // Euler-Mascheroni
  std::uint64_t min_block = 5;        // below this M the max-model is off; use raw mean
};

/// floor(C(n_f - 1, t) / n_G), clamped below at 1. The binomial saturates
/// at a large sentinel instead of overflowing.
std::uint64_t compute_block_size(int n_f, int t, int n_g);

/// C(n, k) with saturation at 2^63 - 1.
std::uint64_t binomial_saturating(int n, int k);

/// alpha = sqrt(var / 1.645), u = mean - gamma * alpha (population variance).
Ex1Fit fit_ex1(const std::vector<double>& samples,
               double gamma = 0.5772156649015329);

/// EX1-adjusted (or raw) estimate of the stratum mean E(X_i^t).
double adjusted_mean(const SampleSet& ss, int n_f, int n_g, const Ex1Config& cfg);

}  // namespace shapfs

#include "shapfs/ex1.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace shapfs {

namespace {
constexpr std::uint64_t kSentinel = std::numeric_limits<std::int64_t>::max();
constexpr double kVarRatio = 1.645;  // Var(EX1) = 1.645 alpha^2
}  // namespace

std::uint64_t binomial_saturating(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t r = 1;
  for (int j = 1; j <= k; ++j) {
    // r <- r * (n - k + j) / j; divide first where exact to delay overflow
    const std::uint64_t num = static_cast<std::uint64_t>(n - k + j);
    if (r > kSentinel / num) return kSentinel;
    r = r * num / static_cast<std::uint64_t>(j);
    if (r >= kSentinel) return kSentinel;
  }
  return r;
}

std::uint64_t compute_block_size(int n_f, int t, int n_g) {
  if (n_g < 1) throw std::invalid_argument("compute_block_size: n_G must be >= 1");
  if (t < 0 || t > n_f - 1) throw std::invalid_argument("compute_block_size: size out of range");
  const std::uint64_t total = binomial_saturating(n_f - 1, t);
  const std::uint64_t m = total / static_cast<std::uint64_t>(n_g);
  return m < 1 ? 1 : m;
}

Ex1Fit fit_ex1(const std::vector<double>& samples, double gamma) {
  if (samples.size() < 2) throw std::invalid_argument("fit_ex1: need at least 2 samples");
  const double n = static_cast<double>(samples.size());
  double mean = 0;
  for (double x : samples) mean += x;
  mean /= n;
  double var = 0;
  for (double x : samples) var += (x - mean) * (x - mean);
  var /= n;

  Ex1Fit fit;
  fit.gamma = gamma;
  fit.scale = std::sqrt(var / kVarRatio);
  fit.location = mean - gamma * fit.scale;
  return fit;
}

double adjusted_mean(const SampleSet& ss, int n_f, int n_g, const Ex1Config& cfg) {
  if (ss.samples.empty()) throw std::invalid_argument("adjusted_mean: empty sample set");

  double raw = 0;
  for (const auto& s : ss.samples) raw += s.second;
  raw /= static_cast<double>(ss.samples.size());

  if (cfg.mode == Ex1Config::Mode::raw || ss.samples.size() < 2) return raw;

  const std::uint64_t m = compute_block_size(n_f, ss.size, n_g);
  if (m < cfg.min_block) return raw;  // sampling nearly exhausts the stratum

  Ex1Fit fit = fit_ex1(ss.marginals(), cfg.gamma);
  fit.block_size = m;
  return fit.location;
}

}  // namespace shapfs

#include "shapfs/valuation.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace shapfs {

void ValuationConfig::validate() const {
  if (mu < 0) throw std::invalid_argument("ValuationConfig: mu must be non-negative");
  if (holdout_fraction <= 0 || holdout_fraction >= 1)
    throw std::invalid_argument("ValuationConfig: holdout_fraction must be in (0,1)");
}

bool ValuationCache::lookup(const Coalition& t, double& out) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = map_.find(t);
  if (it == map_.end()) {
    ++misses_;
    return false;
  }
  ++hits_;
  out = it->second;
  return true;
}

void ValuationCache::store(const Coalition& t, double v) {
  std::lock_guard<std::mutex> lock(mu_);
  map_[t] = v;  // last writer wins; values identical by determinism
}

void ValuationCache::pinned_hit() const {
  std::lock_guard<std::mutex> lock(mu_);
  ++hits_;
}

std::size_t ValuationCache::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return map_.size();
}

namespace {

// Stratified train/holdout split, fixed by the config seed so every
// coalition sees the same partition.
void holdout_split(const std::vector<int>& labels, double frac, std::uint64_t seed,
                   std::vector<int>& train, std::vector<int>& hold) {
  std::mt19937_64 rng(seed ^ 0xa5a5a5a55a5a5a5aull);
  for (int cls = 0; cls <= 1; ++cls) {
    std::vector<int> idx;
    for (std::size_t r = 0; r < labels.size(); ++r)
      if ((labels[r] != 0) == (cls == 1)) idx.push_back(static_cast<int>(r));
    std::shuffle(idx.begin(), idx.end(), rng);
    std::size_t n_hold = static_cast<std::size_t>(static_cast<double>(idx.size()) * frac);
    n_hold = std::min(std::max<std::size_t>(n_hold, 1), idx.size() > 1 ? idx.size() - 1 : 0);
    for (std::size_t j = 0; j < idx.size(); ++j)
      (j < n_hold ? hold : train).push_back(idx[j]);
  }
  std::sort(train.begin(), train.end());
  std::sort(hold.begin(), hold.end());
}

}  // namespace

double coalition_value(const FeatureMatrix& data, const Coalition& t,
                       const ValuationConfig& cfg) {
  cfg.validate();
  if (t.capacity() != data.n_features())
    throw std::invalid_argument("coalition_value: coalition capacity does not match feature count");
  if (t.empty()) return 0.0;

  std::vector<int> train_rows, hold_rows;
  holdout_split(data.labels, cfg.holdout_fraction, cfg.seed, train_rows, hold_rows);
  if (hold_rows.empty()) throw std::invalid_argument("coalition_value: empty validation partition");

  const auto members = t.members();
  const Matrix x_train = data.x.select_rows(train_rows).select_columns(members);
  const Matrix x_hold = data.x.select_rows(hold_rows).select_columns(members);
  std::vector<int> y_train, y_hold;
  for (int r : train_rows) y_train.push_back(data.labels[static_cast<std::size_t>(r)]);
  for (int r : hold_rows) y_hold.push_back(data.labels[static_cast<std::size_t>(r)]);

  const BinaryModel model = train(cfg.inner_classifier, x_train, y_train, cfg.train, cfg.seed);
  const MetricsReport m = evaluate(model, x_hold, y_hold);
  return ((1.0 - m.fnr) + cfg.mu * (1.0 - m.fpr)) / (1.0 + cfg.mu);
}

double cached_value(ValuationCache& cache, const FeatureMatrix& data,
                    const Coalition& t, const ValuationConfig& cfg) {
  if (t.empty()) {
    cache.pinned_hit();
    return 0.0;
  }
  double v;
  if (cache.lookup(t, v)) return v;
  v = coalition_value(data, t, cfg);
  cache.store(t, v);
  return v;
}

}  // namespace shapfs

#pragma once

#include <cstdint>
#include <mutex>
#include <unordered_map>

#include "shapfs/classifiers.hpp"
#include "shapfs/coalition.hpp"
#include "shapfs/dataset.hpp"
#include "shapfs/game.hpp"

namespace shapfs {

struct ValuationConfig {
  double mu = 1.0;  // sensitivity/specificity mixing weight, >= 0
  ClassifierKind inner_classifier = ClassifierKind::logistic;
  double holdout_fraction = 0.25;  // inner validation share
  std::uint64_t seed = 0;
  TrainConfig train;

  void validate() const;
};

/// Memoizes nu by coalition bit pattern. nu(empty) = 0 is pinned.
class ValuationCache {
 public:
  bool lookup(const Coalition& t, double& out) const;
  void store(const Coalition& t, double v);
  void pinned_hit() const;  // nu(empty) short-circuit
  std::uint64_t hits() const { return hits_; }
  std::uint64_t misses() const { return misses_; }
  std::size_t size() const;

 private:
  mutable std::mutex mu_;
  std::unordered_map<Coalition, double, CoalitionHash> map_;
  mutable std::uint64_t hits_ = 0;
  mutable std::uint64_t misses_ = 0;
};

/// Trains the inner classifier on columns T of a stratified holdout split
/// and blends sensitivity and specificity:
///   nu(T) = ((1 - FNR) + mu (1 - FPR)) / (1 + mu),  nu(empty) = 0.
double coalition_value(const FeatureMatrix& data, const Coalition& t,
                       const ValuationConfig& cfg);

/// Memoized coalition_value; cached and uncached paths agree exactly.
double cached_value(ValuationCache& cache, const FeatureMatrix& data,
                    const Coalition& t, const ValuationConfig& cfg);

/// GameOracle facade over coalition_value with a shared cache.
class ClassifierGame : public GameOracle {
 public:
  ClassifierGame(const FeatureMatrix& data, ValuationConfig cfg)
      : data_(data), cfg_(std::move(cfg)) {
    cfg_.validate();
  }
  int player_count() const override { return data_.n_features(); }
  double value(const Coalition& t) const override {
    return cached_value(cache_, data_, t, cfg_);
  }
  const ValuationCache& cache() const { return cache_; }

 private:
  const FeatureMatrix& data_;
  ValuationConfig cfg_;
  mutable ValuationCache cache_;
};

}  // namespace shapfs

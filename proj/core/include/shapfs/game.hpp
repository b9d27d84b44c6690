#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <random>
#include <vector>

#include "shapfs/coalition.hpp"

namespace shapfs {

/// Characteristic function of a cooperative game over feature players.
/// Implementations must be deterministic and satisfy value(empty) == 0.
class GameOracle {
 public:
  virtual ~GameOracle() = default;
  virtual int player_count() const = 0;
  virtual double value(const Coalition& t) const = 0;
};

/// Counts value() calls; used to enforce the evaluation budget.
class CountingGame : public GameOracle {
 public:
  explicit CountingGame(const GameOracle& inner) : inner_(inner) {}
  int player_count() const override { return inner_.player_count(); }
  double value(const Coalition& t) const override {
    calls_.fetch_add(1, std::memory_order_relaxed);
    return inner_.value(t);
  }
  std::uint64_t calls() const { return calls_.load(std::memory_order_relaxed); }

 private:
  const GameOracle& inner_;
  mutable std::atomic<std::uint64_t> calls_{0};
};

/// nu(T) = sum of per-player weights over members of T.
class AdditiveGame : public GameOracle {
 public:
  explicit AdditiveGame(std::vector<double> weights) : w_(std::move(weights)) {}
  int player_count() const override { return static_cast<int>(w_.size()); }
  double value(const Coalition& t) const override {
    double s = 0;
    for (int i = 0; i < t.capacity(); ++i)
      if (t.contains(i)) s += w_[static_cast<std::size_t>(i)];
    return s;
  }

 private:
  std::vector<double> w_;
};

/// nu(T) = 1 iff |T| >= quorum.
class MajorityGame : public GameOracle {
 public:
  MajorityGame(int n, int quorum) : n_(n), quorum_(quorum) {}
  int player_count() const override { return n_; }
  double value(const Coalition& t) const override {
    return t.cardinality() >= quorum_ ? 1.0 : 0.0;
  }

 private:
  int n_, quorum_;
};

/// nu(T) = min(#left-glove holders in T, #right-glove holders in T).
class GloveGame : public GameOracle {
 public:
  GloveGame(int n, std::vector<int> left, std::vector<int> right)
      : n_(n), left_(std::move(left)), right_(std::move(right)) {}
  int player_count() const override { return n_; }
  double value(const Coalition& t) const override {
    int l = 0, r = 0;
    for (int i : left_)
      if (t.contains(i)) ++l;
    for (int i : right_)
      if (t.contains(i)) ++r;
    return static_cast<double>(std::min(l, r));
  }

 private:
  int n_;
  std::vector<int> left_, right_;
};

/// Explicit value table indexed by coalition bit mask; requires n <= 24.
class TableGame : public GameOracle {
 public:
  TableGame(int n, std::vector<double> values) : n_(n), v_(std::move(values)) {
    if (n < 0 || n > 24) throw std::invalid_argument("TableGame: player count out of range");
    if (v_.size() != (std::size_t{1} << n)) throw std::invalid_argument("TableGame: table size mismatch");
    v_[0] = 0.0;
  }
  int player_count() const override { return n_; }
  double value(const Coalition& t) const override {
    return v_[static_cast<std::size_t>(t.mask())];
  }

  /// Uniform random values in [0,1], nu(empty) pinned to 0.
  static TableGame random(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> v(std::size_t{1} << n);
    for (auto& x : v) x = u(rng);
    v[0] = 0.0;
    return TableGame(n, std::move(v));
  }

 private:
  int n_;
  std::vector<double> v_;
};

/// Smooth monotone game with planted pairwise interactions; Shapley values
/// have a closed form through exact enumeration at small n. Used for
/// estimator-fidelity checks.
class WeightedInteractionGame : public GameOracle {
 public:
  WeightedInteractionGame(std::vector<double> weights,
                          std::vector<std::pair<std::pair<int, int>, double>> pairs)
      : w_(std::move(weights)), pairs_(std::move(pairs)) {
    double m = 0;
    for (double x : w_) m += x;
    for (const auto& p : pairs_) m += std::abs(p.second);
    norm_ = m > 0 ? m : 1.0;
  }
  int player_count() const override { return static_cast<int>(w_.size()); }
  double value(const Coalition& t) const override {
    double s = 0;
    for (int i = 0; i < t.capacity(); ++i)
      if (t.contains(i)) s += w_[static_cast<std::size_t>(i)];
    for (const auto& p : pairs_)
      if (t.contains(p.first.first) && t.contains(p.first.second)) s += p.second;
    return std::max(0.0, s / norm_);
  }

  static WeightedInteractionGame random(int n, std::uint64_t seed);

 private:
  std::vector<double> w_;
  std::vector<std::pair<std::pair<int, int>, double>> pairs_;
  double norm_ = 1.0;
};

/// Marginal of the focal feature is high iff the coalition contains a
/// planted partner feature. Used to verify GA selection pressure.
class PlantedPartnerGame : public GameOracle {
 public:
  PlantedPartnerGame(int n, int focal, int partner)
      : n_(n), focal_(focal), partner_(partner) {}
  int player_count() const override { return n_; }
  double value(const Coalition& t) const override {
    if (!t.contains(focal_)) return 0.0;
    return t.contains(partner_) ? 1.0 : 0.0;
  }

 private:
  int n_, focal_, partner_;
};

}  // namespace shapfs

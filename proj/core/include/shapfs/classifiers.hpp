#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "shapfs/matrix.hpp"
#include "shapfs/metrics.hpp"

namespace shapfs {

enum class ClassifierKind { logistic, nearest_centroid, rusboost_lite };

ClassifierKind classifier_kind_from_string(const std::string& s);
std::string to_string(ClassifierKind k);

struct TrainConfig {
  // logistic
  int max_iterations = 300;
  double learning_rate = 0.5;
  double l2_penalty = 1e-2;
  // rusboost-lite
  int boosting_rounds = 50;
  double boost_learning_rate = 1.0;
};

/// Depth-<=2 axis-aligned decision tree node layout: a root split and an
/// optional split per child; leaves predict a class in {0, 1}.
struct Stump {
  int feature = -1;
  double threshold = 0;
  int left_leaf = 0;   // prediction when x[feature] < threshold and no child split
  int right_leaf = 1;
  int left_child = -1;   // index into the tree's node pool, -1 = leaf
  int right_child = -1;
};

struct BoostedTree {
  std::vector<Stump> nodes;  // nodes[0] is the root
  double alpha = 0;          // boosting vote weight
};

/// Trained binary classifier producing a score in [0, 1]; decision
/// threshold fixed at 0.5.
struct BinaryModel {
  ClassifierKind kind = ClassifierKind::logistic;
  int dims = 0;
  // logistic: weights (dims) + bias
  std::vector<double> weights;
  double bias = 0;
  // nearest-centroid
  std::vector<double> centroid_pos, centroid_neg;
  // rusboost-lite
  std::vector<BoostedTree> trees;

  double predict_score(std::span<const double> x) const;
  std::vector<double> predict_scores(const Matrix& x) const;
};

/// Deterministic given (data, config, seed). Requires at least two samples
/// per class and finite features.
BinaryModel train(ClassifierKind kind, const Matrix& x, const std::vector<int>& y,
                  const TrainConfig& cfg, std::uint64_t seed);

/// Confusion metrics at the model threshold.
MetricsReport evaluate(const BinaryModel& model, const Matrix& x,
                       const std::vector<int>& y);

}  // namespace shapfs

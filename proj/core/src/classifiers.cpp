#include "shapfs/classifiers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace shapfs {

ClassifierKind classifier_kind_from_string(const std::string& s) {
  if (s == "logistic") return ClassifierKind::logistic;
  if (s == "nearest-centroid") return ClassifierKind::nearest_centroid;
  if (s == "rusboost-lite") return ClassifierKind::rusboost_lite;
  throw std::invalid_argument("unknown classifier kind: " + s);
}

std::string to_string(ClassifierKind k) {
  switch (k) {
    case ClassifierKind::logistic: return "logistic";
    case ClassifierKind::nearest_centroid: return "nearest-centroid";
    case ClassifierKind::rusboost_lite: return "rusboost-lite";
  }
  return "?";
}

namespace {

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

void check_input(const Matrix& x, const std::vector<int>& y) {
  if (x.rows != static_cast<int>(y.size())) throw std::invalid_argument("train: row/label count mismatch");
  long pos = 0, neg = 0;
  for (int v : y) (v != 0 ? pos : neg)++;
  if (pos < 2 || neg < 2) throw std::invalid_argument("train: need at least 2 samples per class");
  for (double v : x.v)
    if (!std::isfinite(v)) throw std::invalid_argument("train: non-finite feature value");
}

BinaryModel train_logistic(const Matrix& x, const std::vector<int>& y,
                           const TrainConfig& cfg) {
  const int n = x.rows, d = x.cols;
  long pos = 0;
  for (int v : y) pos += (v != 0);
  const long neg = n - pos;
  // balance the classes
  const double wp = static_cast<double>(n) / (2.0 * static_cast<double>(pos));
  const double wn = static_cast<double>(n) / (2.0 * static_cast<double>(neg));

  BinaryModel m;
  m.kind = ClassifierKind::logistic;
  m.dims = d;
  m.weights.assign(static_cast<std::size_t>(d), 0.0);
  m.bias = 0;

  std::vector<double> grad(static_cast<std::size_t>(d));
  for (int it = 0; it < cfg.max_iterations; ++it) {
    std::fill(grad.begin(), grad.end(), 0.0);
    double gb = 0;
    for (int r = 0; r < n; ++r) {
      const auto row = x.row(r);
      double z = m.bias;
      for (int c = 0; c < d; ++c) z += m.weights[static_cast<std::size_t>(c)] * row[static_cast<std::size_t>(c)];
      const double p = sigmoid(z);
      const double e = (y[static_cast<std::size_t>(r)] != 0 ? wp : wn) *
                       (p - (y[static_cast<std::size_t>(r)] != 0 ? 1.0 : 0.0));
      for (int c = 0; c < d; ++c) grad[static_cast<std::size_t>(c)] += e * row[static_cast<std::size_t>(c)];
      gb += e;
    }
    const double inv_n = 1.0 / n;
    for (int c = 0; c < d; ++c) {
      grad[static_cast<std::size_t>(c)] = grad[static_cast<std::size_t>(c)] * inv_n +
                                          cfg.l2_penalty * m.weights[static_cast<std::size_t>(c)];
      m.weights[static_cast<std::size_t>(c)] -= cfg.learning_rate * grad[static_cast<std::size_t>(c)];
    }
    m.bias -= cfg.learning_rate * gb * inv_n;
  }
  return m;
}

BinaryModel train_centroid(const Matrix& x, const std::vector<int>& y) {
  const int d = x.cols;
  BinaryModel m;
  m.kind = ClassifierKind::nearest_centroid;
  m.dims = d;
  m.centroid_pos.assign(static_cast<std::size_t>(d), 0.0);
  m.centroid_neg.assign(static_cast<std::size_t>(d), 0.0);
  long np = 0, nn = 0;
  for (int r = 0; r < x.rows; ++r) {
    const auto row = x.row(r);
    auto& cen = (y[static_cast<std::size_t>(r)] != 0) ? m.centroid_pos : m.centroid_neg;
    (y[static_cast<std::size_t>(r)] != 0 ? np : nn)++;
    for (int c = 0; c < d; ++c) cen[static_cast<std::size_t>(c)] += row[static_cast<std::size_t>(c)];
  }
  for (int c = 0; c < d; ++c) {
    m.centroid_pos[static_cast<std::size_t>(c)] /= static_cast<double>(np);
    m.centroid_neg[static_cast<std::size_t>(c)] /= static_cast<double>(nn);
  }
  return m;
}

// ---- rusboost-lite ---------------------------------------------------------

struct StumpFit {
  Stump stump;
  double error = 1.0;  // weighted misclassification on the fitting subset
};

// Best single axis-aligned split on `idx` under weights `w`.
StumpFit fit_stump(const Matrix& x, const std::vector<int>& y,
                   const std::vector<double>& w, const std::vector<int>& idx) {
  StumpFit best;
  double wp = 0, wn = 0;
  for (int r : idx) (y[static_cast<std::size_t>(r)] != 0 ? wp : wn) += w[static_cast<std::size_t>(r)];
  // degenerate no-split stump: predict the heavier class on both sides
  best.stump.feature = -1;
  best.stump.left_leaf = best.stump.right_leaf = (wp >= wn) ? 1 : 0;
  best.error = std::min(wp, wn);

  std::vector<std::pair<double, int>> col(idx.size());
  for (int f = 0; f < x.cols; ++f) {
    for (std::size_t k = 0; k < idx.size(); ++k)
      col[k] = {x.at(idx[k], f), idx[k]};
    std::sort(col.begin(), col.end());
    // sweep thresholds between adjacent distinct values
    double left_wp = 0, left_wn = 0;
    for (std::size_t k = 0; k + 1 < col.size(); ++k) {
      const int r = col[k].second;
      (y[static_cast<std::size_t>(r)] != 0 ? left_wp : left_wn) += w[static_cast<std::size_t>(r)];
      if (col[k].first == col[k + 1].first) continue;
      const double right_wp = wp - left_wp, right_wn = wn - left_wn;
      const int ll = (left_wp >= left_wn) ? 1 : 0;
      const int rl = (right_wp >= right_wn) ? 1 : 0;
      const double err = (ll == 1 ? left_wn : left_wp) + (rl == 1 ? right_wn : right_wp);
      if (err < best.error) {
        best.error = err;
        best.stump.feature = f;
        best.stump.threshold = (col[k].first + col[k + 1].first) / 2.0;
        best.stump.left_leaf = ll;
        best.stump.right_leaf = rl;
      }
    }
  }
  return best;
}

int tree_predict(const BoostedTree& t, std::span<const double> x) {
  const Stump& root = t.nodes[0];
  if (root.feature < 0) return root.left_leaf;
  const bool left = x[static_cast<std::size_t>(root.feature)] < root.threshold;
  const int child = left ? root.left_child : root.right_child;
  if (child < 0) return left ? root.left_leaf : root.right_leaf;
  const Stump& s = t.nodes[static_cast<std::size_t>(child)];
  if (s.feature < 0) return s.left_leaf;
  return x[static_cast<std::size_t>(s.feature)] < s.threshold ? s.left_leaf : s.right_leaf;
}

BoostedTree fit_depth2_tree(const Matrix& x, const std::vector<int>& y,
                            const std::vector<double>& w, const std::vector<int>& idx) {
  BoostedTree tree;
  StumpFit root = fit_stump(x, y, w, idx);
  tree.nodes.push_back(root.stump);
  if (root.stump.feature < 0) return tree;

  std::vector<int> left_idx, right_idx;
  for (int r : idx)
    (x.at(r, root.stump.feature) < root.stump.threshold ? left_idx : right_idx).push_back(r);

  for (int side = 0; side < 2; ++side) {
    const auto& sub = (side == 0) ? left_idx : right_idx;
    if (sub.size() < 4) continue;
    StumpFit child = fit_stump(x, y, w, sub);
    const int leaf = (side == 0) ? tree.nodes[0].left_leaf : tree.nodes[0].right_leaf;
    double leaf_err = 0;
    for (int r : sub)
      if ((y[static_cast<std::size_t>(r)] != 0 ? 1 : 0) != leaf) leaf_err += w[static_cast<std::size_t>(r)];
    if (child.stump.feature >= 0 && child.error < leaf_err) {
      tree.nodes.push_back(child.stump);
      const int ci = static_cast<int>(tree.nodes.size()) - 1;
      if (side == 0) tree.nodes[0].left_child = ci;
      else tree.nodes[0].right_child = ci;
    }
  }
  return tree;
}

BinaryModel train_rusboost(const Matrix& x, const std::vector<int>& y,
                           const TrainConfig& cfg, std::uint64_t seed) {
  const int n = x.rows;
  BinaryModel m;
  m.kind = ClassifierKind::rusboost_lite;
  m.dims = x.cols;

  std::vector<int> pos_idx, neg_idx;
  for (int r = 0; r < n; ++r) (y[static_cast<std::size_t>(r)] != 0 ? pos_idx : neg_idx).push_back(r);
  const bool pos_is_minority = pos_idx.size() <= neg_idx.size();
  const auto& minority = pos_is_minority ? pos_idx : neg_idx;
  auto majority = pos_is_minority ? neg_idx : pos_idx;

  std::mt19937_64 rng(seed);
  std::vector<double> w(static_cast<std::size_t>(n), 1.0 / n);

  for (int round = 0; round < cfg.boosting_rounds; ++round) {
    // class-balanced undersample of the majority class
    std::shuffle(majority.begin(), majority.end(), rng);
    std::vector<int> idx = minority;
    idx.insert(idx.end(), majority.begin(),
               majority.begin() + static_cast<std::ptrdiff_t>(std::min(minority.size(), majority.size())));

    BoostedTree tree = fit_depth2_tree(x, y, w, idx);
    double err = 0;
    for (int r = 0; r < n; ++r)
      if (tree_predict(tree, x.row(r)) != (y[static_cast<std::size_t>(r)] != 0 ? 1 : 0))
        err += w[static_cast<std::size_t>(r)];

    if (err >= 0.5) continue;  // weak learner no better than chance this round
    const double eps = 1e-10;
    tree.alpha = 0.5 * cfg.boost_learning_rate *
                 std::log((1.0 - err + eps) / (err + eps));
    m.trees.push_back(tree);

    double total = 0;
    for (int r = 0; r < n; ++r) {
      const int h = tree_predict(tree, x.row(r)) == 1 ? 1 : -1;
      const int t = y[static_cast<std::size_t>(r)] != 0 ? 1 : -1;
      w[static_cast<std::size_t>(r)] *= std::exp(-tree.alpha * h * t);
      total += w[static_cast<std::size_t>(r)];
    }
    for (auto& wi : w) wi /= total;
    if (err <= eps) break;  // perfect fit
  }
  return m;
}

}  // namespace

double BinaryModel::predict_score(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dims) throw std::invalid_argument("predict_score: dimensionality mismatch");
  switch (kind) {
    case ClassifierKind::logistic: {
      double z = bias;
      for (int c = 0; c < dims; ++c) z += weights[static_cast<std::size_t>(c)] * x[static_cast<std::size_t>(c)];
      return sigmoid(z);
    }
    case ClassifierKind::nearest_centroid: {
      double dp = 0, dn = 0;
      for (int c = 0; c < dims; ++c) {
        const double ep = x[static_cast<std::size_t>(c)] - centroid_pos[static_cast<std::size_t>(c)];
        const double en = x[static_cast<std::size_t>(c)] - centroid_neg[static_cast<std::size_t>(c)];
        dp += ep * ep;
        dn += en * en;
      }
      return sigmoid(std::sqrt(dn) - std::sqrt(dp));
    }
    case ClassifierKind::rusboost_lite: {
      double total = 0, vote = 0;
      for (const auto& t : trees) {
        total += t.alpha;
        if (tree_predict(t, x) == 1) vote += t.alpha;
      }
      return total > 0 ? vote / total : 0.5;
    }
  }
  return 0.5;
}

std::vector<double> BinaryModel::predict_scores(const Matrix& x) const {
  std::vector<double> s;
  s.reserve(static_cast<std::size_t>(x.rows));
  for (int r = 0; r < x.rows; ++r) s.push_back(predict_score(x.row(r)));
  return s;
}

BinaryModel train(ClassifierKind kind, const Matrix& x, const std::vector<int>& y,
                  const TrainConfig& cfg, std::uint64_t seed) {
  check_input(x, y);
  switch (kind) {
    case ClassifierKind::logistic: return train_logistic(x, y, cfg);
    case ClassifierKind::nearest_centroid: return train_centroid(x, y);
    case ClassifierKind::rusboost_lite: return train_rusboost(x, y, cfg, seed);
  }
  throw std::invalid_argument("train: unknown classifier kind");
}

MetricsReport evaluate(const BinaryModel& model, const Matrix& x,
                       const std::vector<int>& y) {
  if (x.rows == 0) throw std::invalid_argument("evaluate: empty evaluation set");
  if (x.cols != model.dims) throw std::invalid_argument("evaluate: dimensionality mismatch");
  return confusion_metrics(model.predict_scores(x), y, 0.5);
}

}  // namespace shapfs

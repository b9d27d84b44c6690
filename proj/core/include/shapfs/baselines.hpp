#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "shapfs/dataset.hpp"

namespace shapfs {

struct ScoreVector {
  std::vector<double> scores;  // one per feature
  std::string method;
  bool higher_is_better = true;

  std::vector<int> ranking() const;  // feature indices, best first
};

/// Chi-square statistic of the bins x 2 contingency table built from
/// equal-width binning of each min-max rescaled feature against the label.
/// Constant features score 0.
ScoreVector chi2_scores(const FeatureMatrix& m, int bins = 10);

/// Histogram mutual information I(binned feature; label) in nats.
ScoreVector mi_scores(const FeatureMatrix& m, int bins = 10);

/// ReliefF weights with Euclidean nearest hits/misses; expects
/// pre-normalized features.
ScoreVector relief_scores(const FeatureMatrix& m, int n_neighbors,
                          int n_iterations, std::uint64_t seed);

/// "feature,method,score,rank" rows, best first.
void write_scores(const std::string& path, const ScoreVector& sv,
                  const std::vector<std::string>& names);

}  // namespace shapfs

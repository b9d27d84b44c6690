#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "shapfs/matrix.hpp"

namespace shapfs {

/// Labeled feature matrix with names and optional provenance tags
/// ("source/subband/statistic" strings carried through from extraction).
struct FeatureMatrix {
  Matrix x;
  std::vector<int> labels;  // 1 = true alarm, 0 = false alarm
  std::vector<std::string> names;
  std::vector<std::string> tags;  // may be empty

  int n_samples() const { return x.rows; }
  int n_features() const { return x.cols; }
};

/// Per-feature normalization statistics (train-split only).
struct NormStats {
  std::vector<double> mean;
  std::vector<double> stddev;          // population std
  std::vector<bool> constant;          // std == 0 columns, mapped to 0
};

/// Delimited text: header row of feature names plus a trailing "label"
/// column; an optional leading "# tags: ..." comment carries provenance.
FeatureMatrix load_matrix(const std::string& path);
void save_matrix(const std::string& path, const FeatureMatrix& m);

/// Z-scores every row using statistics from the training rows only.
NormStats zscore_normalize(FeatureMatrix& m, const std::vector<int>& train_rows);

struct FoldPlan {
  int k = 5;
  int repeats = 2;
  std::uint64_t seed = 0;
  // assignments[repeat][fold] = test row indices
  std::vector<std::vector<std::vector<int>>> assignments;

  std::vector<int> train_rows(int repeat, int fold, int n) const;
};

/// Near-equal random folds per repeat; stratified by label when labels are
/// supplied. Deterministic given seed.
FoldPlan repeated_kfold(int n, int k, int repeats, std::uint64_t seed,
                        const std::vector<int>& labels = {});

/// "repeat,fold,test_indices..." rows for audit.
void write_fold_plan(const std::string& path, const FoldPlan& plan);

}  // namespace shapfs

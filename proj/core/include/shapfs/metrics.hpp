#pragma once

#include <string>
#include <utility>
#include <vector>

namespace shapfs {

/// Confusion counts and derived rates; positive class = true alarm.
struct MetricsReport {
  long tp = 0, fp = 0, tn = 0, fn = 0;
  double fnr = 0, fpr = 0;
  double sensitivity = 0, specificity = 0, accuracy = 0;
};

/// Counts at the given score threshold (predict positive when score >= threshold).
MetricsReport confusion_metrics(const std::vector<double>& scores,
                                const std::vector<int>& labels,
                                double threshold = 0.5);

struct RocPoint {
  double threshold;
  double fpr;
  double tpr;
};

/// ROC by sweeping all distinct score thresholds, ties stepped together;
/// AUC by the trapezoidal rule. Requires both classes present.
std::pair<std::vector<RocPoint>, double> roc_auc(const std::vector<double>& scores,
                                                 const std::vector<int>& labels);

/// Writes "threshold,fpr,tpr" rows.
void write_roc(const std::string& path, const std::vector<RocPoint>& pts);

}  // namespace shapfs

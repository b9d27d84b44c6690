#include "shapfs/metrics.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <stdexcept>

namespace shapfs {

MetricsReport confusion_metrics(const std::vector<double>& scores,
                                const std::vector<int>& labels,
                                double threshold) {
  if (scores.size() != labels.size()) throw std::invalid_argument("confusion_metrics: size mismatch");
  if (scores.empty()) throw std::invalid_argument("confusion_metrics: empty evaluation set");

  MetricsReport m;
  for (std::size_t k = 0; k < scores.size(); ++k) {
    const bool pred = scores[k] >= threshold;
    const bool pos = labels[k] != 0;
    if (pos && pred) ++m.tp;
    else if (pos && !pred) ++m.fn;
    else if (!pos && pred) ++m.fp;
    else ++m.tn;
  }
  const long p = m.tp + m.fn, n = m.fp + m.tn;
  m.fnr = p > 0 ? static_cast<double>(m.fn) / static_cast<double>(p) : 0.0;
  m.fpr = n > 0 ? static_cast<double>(m.fp) / static_cast<double>(n) : 0.0;
  m.sensitivity = 1.0 - m.fnr;
  m.specificity = 1.0 - m.fpr;
  m.accuracy = static_cast<double>(m.tp + m.tn) / static_cast<double>(p + n);
  return m;
}

std::pair<std::vector<RocPoint>, double> roc_auc(const std::vector<double>& scores,
                                                 const std::vector<int>& labels) {
  if (scores.size() != labels.size()) throw std::invalid_argument("roc_auc: size mismatch");
  long p = 0, n = 0;
  for (int y : labels) (y != 0 ? p : n)++;
  if (p == 0 || n == 0) throw std::invalid_argument("roc_auc: both classes required");

  std::vector<std::size_t> idx(scores.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

  std::vector<RocPoint> pts;
  pts.push_back({scores[idx.front()] + 1.0, 0.0, 0.0});
  double auc = 0;
  long tp = 0, fp = 0;
  std::size_t k = 0;
  while (k < idx.size()) {
    const double thr = scores[idx[k]];
    // step through all samples tied at this threshold together
    while (k < idx.size() && scores[idx[k]] == thr) {
      (labels[idx[k]] != 0 ? tp : fp)++;
      ++k;
    }
    const double fpr = static_cast<double>(fp) / static_cast<double>(n);
    const double tpr = static_cast<double>(tp) / static_cast<double>(p);
    const auto& prev = pts.back();
    auc += (fpr - prev.fpr) * (tpr + prev.tpr) / 2.0;
    pts.push_back({thr, fpr, tpr});
  }
  return {std::move(pts), auc};
}

void write_roc(const std::string& path, const std::vector<RocPoint>& pts) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_roc: cannot open " + path);
  out << "threshold,fpr,tpr\n";
  out.precision(17);
  for (const auto& pt : pts) out << pt.threshold << ',' << pt.fpr << ',' << pt.tpr << '\n';
}

}  // namespace shapfs

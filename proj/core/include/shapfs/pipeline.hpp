#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace shapfs {

/// Batch-command parameters; file keys use the same names as the fields.
struct RunConfig {
  std::string method = "shapley-ga";  // shapley-ga | shapley-exact | chi2 | mi | relief
  double mu = 1.0;
  int max_coalition_size = 20;  // n_f^max
  int samples_per_size = 100;   // n_G
  int population_size = 20;     // n_p
  int top_k = 20;
  std::uint64_t seed = 0;
  int workers = 1;

  std::string inner_classifier = "logistic";
  double inner_holdout_fraction = 0.25;
  std::string adjustment_mode = "ex1";  // ex1 | raw
  double ex1_gamma = 0.5772156649015329;
  std::uint64_t ex1_min_block = 5;

  std::vector<std::string> eval_classifiers = {"logistic", "nearest-centroid",
                                               "rusboost-lite"};
  int folds = 5;
  int repeats = 2;

  int bins = 10;
  int relief_neighbors = 5;
  int relief_iterations = 200;

  void apply(const std::string& key, const std::string& value);
  void merge_file(const std::string& path);  // key=value lines, '#' comments
};

/// One 380-feature row per readable record, ordered by record id.
/// Unreadable records are logged and skipped; throws if none succeed.
void cmd_extract(const std::string& records_dir, const std::string& out_path,
                 std::ostream& log);

/// Ranks features by the configured method and writes the top_k rows as
/// "feature_index,feature_name,<score>,rank,tag".
void cmd_select(const std::string& matrix_path, const RunConfig& cfg,
                const std::string& out_path, std::ostream& log);

/// Repeated stratified k-fold evaluation of the selected features over the
/// configured classifiers; writes "<prefix>_metrics.csv" and one pooled
/// ROC file per classifier.
void cmd_evaluate(const std::string& matrix_path, const std::string& selection_path,
                  const RunConfig& cfg, const std::string& out_prefix,
                  std::ostream& log);

/// Frequency of selected features by source group, one row per selection
/// file.
void cmd_report(const std::vector<std::string>& selection_files,
                const std::string& out_path, std::ostream& log);

}  // namespace shapfs

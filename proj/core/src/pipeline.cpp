#include "shapfs/pipeline.hpp"

#include <algorithm>
#include <array>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "shapfs/baselines.hpp"
#include "shapfs/dataset.hpp"
#include "shapfs/features.hpp"
#include "shapfs/metrics.hpp"
#include "shapfs/selection.hpp"
#include "shapfs/valuation.hpp"

namespace fs = std::filesystem;

namespace shapfs {

void RunConfig::apply(const std::string& key, const std::string& value) {
  try {
    if (key == "method") method = value;
    else if (key == "mu") mu = std::stod(value);
    else if (key == "max_coalition_size") max_coalition_size = std::stoi(value);
    else if (key == "samples_per_size") samples_per_size = std::stoi(value);
    else if (key == "population_size") population_size = std::stoi(value);
    else if (key == "top_k") top_k = std::stoi(value);
    else if (key == "seed") seed = std::stoull(value);
    else if (key == "workers") workers = std::stoi(value);
    else if (key == "inner_classifier") inner_classifier = value;
    else if (key == "inner_holdout_fraction") inner_holdout_fraction = std::stod(value);
    else if (key == "adjustment_mode") adjustment_mode = value;
    else if (key == "ex1_gamma") ex1_gamma = std::stod(value);
    else if (key == "ex1_min_block") ex1_min_block = std::stoull(value);
    else if (key == "folds") folds = std::stoi(value);
    else if (key == "repeats") repeats = std::stoi(value);
    else if (key == "bins") bins = std::stoi(value);
    else if (key == "relief_neighbors") relief_neighbors = std::stoi(value);
    else if (key == "relief_iterations") relief_iterations = std::stoi(value);
    else if (key == "eval_classifiers") {
      eval_classifiers.clear();
      std::istringstream ss(value);
      std::string item;
      while (std::getline(ss, item, ',')) eval_classifiers.push_back(item);
    } else {
      throw std::invalid_argument("unknown configuration key: " + key);
    }
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception&) {
    throw std::invalid_argument("bad value for configuration key " + key + ": " + value);
  }
}

void RunConfig::merge_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open configuration file " + path);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("bad configuration line: " + line);
    std::string key = line.substr(0, eq), value = line.substr(eq + 1);
    auto strip = [](std::string& s) {
      s.erase(0, s.find_first_not_of(" \t"));
      s.erase(s.find_last_not_of(" \t") + 1);
    };
    strip(key);
    strip(value);
    apply(key, value);
  }
}

void cmd_extract(const std::string& records_dir, const std::string& out_path,
                 std::ostream& log) {
  if (!fs::is_directory(records_dir))
    throw std::invalid_argument("extract: not a directory: " + records_dir);

  std::vector<std::string> paths;
  for (const auto& e : fs::directory_iterator(records_dir))
    if (e.is_regular_file()) paths.push_back(e.path().string());
  if (paths.empty()) throw std::invalid_argument("extract: no record files in " + records_dir);

  struct Row {
    std::string id;
    int label;
    FeatureVector380 fv;
  };
  std::vector<Row> rows;
  for (const auto& p : paths) {
    try {
      Record rec = read_record(p);
      Row row{rec.id, rec.label, extract_all(rec)};
      rows.push_back(std::move(row));
    } catch (const std::exception& e) {
      log << "warning: skipping " << p << ": " << e.what() << '\n';
    }
  }
  if (rows.empty()) throw std::runtime_error("extract: all records failed");
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.id < b.id; });

  FeatureMatrix m;
  m.names = rows.front().fv.names;
  m.tags = rows.front().fv.tags;
  m.x = Matrix(static_cast<int>(rows.size()), kFeatureCount);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    m.labels.push_back(rows[r].label);
    for (int c = 0; c < kFeatureCount; ++c)
      m.x.at(static_cast<int>(r), c) = rows[r].fv.values[static_cast<std::size_t>(c)];
  }
  save_matrix(out_path, m);
  log << "extracted " << rows.size() << " records -> " << out_path << '\n';
}

namespace {

struct Selection {
  std::vector<int> indices;      // ranked, best first
  std::vector<double> scores;    // aligned with indices
  std::string score_column;
};

void write_selection(const std::string& path, const Selection& sel,
                     const FeatureMatrix& m) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("select: cannot open " + path);
  out << "feature_index,feature_name," << sel.score_column << ",rank,tag\n";
  out.precision(17);
  for (std::size_t r = 0; r < sel.indices.size(); ++r) {
    const int i = sel.indices[r];
    const std::string tag =
        m.tags.empty() ? "untagged" : m.tags[static_cast<std::size_t>(i)];
    out << i << ',' << m.names[static_cast<std::size_t>(i)] << ',' << sel.scores[r] << ','
        << (r + 1) << ',' << tag << '\n';
  }
}

std::vector<int> top_of(const std::vector<int>& ranking, int k) {
  std::vector<int> out(ranking.begin(),
                       ranking.begin() + std::min<std::size_t>(ranking.size(), static_cast<std::size_t>(k)));
  return out;
}

}  // namespace

void cmd_select(const std::string& matrix_path, const RunConfig& cfg,
                const std::string& out_path, std::ostream& log) {
  if (cfg.top_k < 1) throw std::invalid_argument("select: top_k must be positive");
  FeatureMatrix m = load_matrix(matrix_path);
  if (cfg.top_k > m.n_features())
    throw std::invalid_argument("select: top_k exceeds feature count");

  // normalize once over all rows; the inner holdout handles its own split
  std::vector<int> all_rows(static_cast<std::size_t>(m.n_samples()));
  std::iota(all_rows.begin(), all_rows.end(), 0);
  zscore_normalize(m, all_rows);

  Selection sel;
  if (cfg.method == "shapley-ga" || cfg.method == "shapley-exact") {
    ValuationConfig vcfg;
    vcfg.mu = cfg.mu;
    vcfg.inner_classifier = classifier_kind_from_string(cfg.inner_classifier);
    vcfg.holdout_fraction = cfg.inner_holdout_fraction;
    vcfg.seed = cfg.seed;
    ClassifierGame game(m, vcfg);

    std::vector<double> phi;
    if (cfg.method == "shapley-exact") {
      phi = exact_shapley(game);
      log << "nu_evaluations=" << (std::uint64_t{1} << m.n_features()) << '\n';
    } else {
      if (cfg.max_coalition_size > m.n_features())
        throw std::invalid_argument("select: max_coalition_size exceeds feature count");
      SelectionConfig scfg;
      scfg.ga.population_size = cfg.population_size;
      scfg.ga.samples_per_size = cfg.samples_per_size;
      scfg.ga.max_coalition_size = cfg.max_coalition_size;
      scfg.ga.seed = cfg.seed;
      scfg.ex1.mode = cfg.adjustment_mode == "raw" ? Ex1Config::Mode::raw : Ex1Config::Mode::ex1;
      scfg.ex1.gamma = cfg.ex1_gamma;
      scfg.ex1.min_block = cfg.ex1_min_block;
      scfg.workers = cfg.workers;
      const ShapleyReport report = run_shapley_ga(game, scfg);
      phi = report.phi;
      const std::uint64_t budget = 2ull * static_cast<std::uint64_t>(m.n_features()) *
                                   static_cast<std::uint64_t>(cfg.max_coalition_size) *
                                   static_cast<std::uint64_t>(cfg.samples_per_size);
      log << "nu_evaluations=" << report.total_evaluations << '\n';
      log << "nu_budget=" << budget << '\n';
      log << "distinct_coalitions=" << game.cache().size() << '\n';
    }
    std::vector<int> idx(phi.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](int a, int b) { return phi[static_cast<std::size_t>(a)] > phi[static_cast<std::size_t>(b)]; });
    sel.indices = top_of(idx, cfg.top_k);
    for (int i : sel.indices) sel.scores.push_back(phi[static_cast<std::size_t>(i)]);
    sel.score_column = "shapley_value";
  } else if (cfg.method == "chi2" || cfg.method == "mi" || cfg.method == "relief") {
    ScoreVector sv;
    if (cfg.method == "chi2") sv = chi2_scores(m, cfg.bins);
    else if (cfg.method == "mi") sv = mi_scores(m, cfg.bins);
    else sv = relief_scores(m, cfg.relief_neighbors, cfg.relief_iterations, cfg.seed);
    sel.indices = top_of(sv.ranking(), cfg.top_k);
    for (int i : sel.indices) sel.scores.push_back(sv.scores[static_cast<std::size_t>(i)]);
    sel.score_column = "score";
  } else {
    throw std::invalid_argument("select: unknown method " + cfg.method);
  }

  write_selection(out_path, sel, m);
  log << "selected " << sel.indices.size() << " features (" << cfg.method << ") -> "
      << out_path << '\n';
}

namespace {

struct SelectionFileRow {
  int index;
  std::string name;
  std::string tag;
};

std::vector<SelectionFileRow> read_selection(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open selection file " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty selection file " + path);
  std::vector<SelectionFileRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::istringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() < 4) throw std::runtime_error("bad selection row in " + path + ": " + line);
    SelectionFileRow row;
    row.index = std::stoi(cells[0]);
    row.name = cells[1];
    row.tag = cells.size() >= 5 ? cells[4] : "untagged";
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

void cmd_evaluate(const std::string& matrix_path, const std::string& selection_path,
                  const RunConfig& cfg, const std::string& out_prefix,
                  std::ostream& log) {
  FeatureMatrix m = load_matrix(matrix_path);
  const auto sel_rows = read_selection(selection_path);
  if (sel_rows.empty()) throw std::invalid_argument("evaluate: empty selection");

  std::map<std::string, int> by_name;
  for (std::size_t c = 0; c < m.names.size(); ++c) by_name[m.names[c]] = static_cast<int>(c);
  std::vector<int> cols;
  for (const auto& row : sel_rows) {
    auto it = by_name.find(row.name);
    if (it == by_name.end())
      throw std::invalid_argument("evaluate: unknown feature name " + row.name);
    cols.push_back(it->second);
  }

  std::vector<ClassifierKind> kinds;
  for (const auto& s : cfg.eval_classifiers) kinds.push_back(classifier_kind_from_string(s));

  const FoldPlan plan = repeated_kfold(m.n_samples(), cfg.folds, cfg.repeats, cfg.seed, m.labels);

  std::ofstream metrics(out_prefix + "_metrics.csv");
  if (!metrics) throw std::runtime_error("evaluate: cannot open metrics output");
  metrics << "repeat,fold,classifier,accuracy,auc,sensitivity,specificity\n";
  metrics.precision(17);

  std::map<std::string, std::pair<std::vector<double>, std::vector<int>>> pooled;
  std::map<std::string, std::array<double, 4>> sums;

  TrainConfig tcfg;
  for (int rep = 0; rep < cfg.repeats; ++rep) {
    for (int fold = 0; fold < cfg.folds; ++fold) {
      const auto& test_rows = plan.assignments[static_cast<std::size_t>(rep)][static_cast<std::size_t>(fold)];
      const auto train_rows = plan.train_rows(rep, fold, m.n_samples());

      FeatureMatrix norm = m;  // per-fold normalization with train stats only
      zscore_normalize(norm, train_rows);
      const Matrix x_train = norm.x.select_rows(train_rows).select_columns(cols);
      const Matrix x_test = norm.x.select_rows(test_rows).select_columns(cols);
      std::vector<int> y_train, y_test;
      for (int r : train_rows) y_train.push_back(m.labels[static_cast<std::size_t>(r)]);
      for (int r : test_rows) y_test.push_back(m.labels[static_cast<std::size_t>(r)]);

      for (ClassifierKind kind : kinds) {
        const BinaryModel model = train(kind, x_train, y_train, tcfg, cfg.seed);
        const auto scores = model.predict_scores(x_test);
        const MetricsReport mr = confusion_metrics(scores, y_test, 0.5);
        const double auc = roc_auc(scores, y_test).second;
        const std::string kname = to_string(kind);
        metrics << rep << ',' << fold << ',' << kname << ',' << mr.accuracy << ',' << auc
                << ',' << mr.sensitivity << ',' << mr.specificity << '\n';
        auto& pool = pooled[kname];
        pool.first.insert(pool.first.end(), scores.begin(), scores.end());
        pool.second.insert(pool.second.end(), y_test.begin(), y_test.end());
        auto& s = sums[kname];
        s[0] += mr.accuracy;
        s[1] += auc;
        s[2] += mr.sensitivity;
        s[3] += mr.specificity;
      }
    }
  }

  const double n_folds = static_cast<double>(cfg.repeats * cfg.folds);
  for (const auto& [kname, s] : sums)
    log << "mean " << kname << ": accuracy=" << s[0] / n_folds << " auc=" << s[1] / n_folds
        << " sensitivity=" << s[2] / n_folds << " specificity=" << s[3] / n_folds << '\n';

  for (const auto& [kname, pool] : pooled) {
    const auto [pts, auc] = roc_auc(pool.first, pool.second);
    write_roc(out_prefix + "_roc_" + kname + ".csv", pts);
    log << "pooled auc " << kname << "=" << auc << '\n';
  }
}

void cmd_report(const std::vector<std::string>& selection_files,
                const std::string& out_path, std::ostream& log) {
  if (selection_files.empty()) throw std::invalid_argument("report: no selection files");

  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("report: cannot open " + out_path);
  out << "method,total,ecg_wavelet,pleth_wavelet,abp_wavelet,ecg_hrv,untagged\n";

  for (const auto& path : selection_files) {
    const auto rows = read_selection(path);
    std::map<std::string, int> counts;
    for (const auto& row : rows) ++counts[row.tag];
    auto get = [&](const char* k) { return counts.count(k) ? counts[k] : 0; };
    const int known = get("ECG-wavelet") + get("PLETH-wavelet") + get("ABP-wavelet") + get("ECG-HRV");
    std::string method = fs::path(path).stem().string();
    out << method << ',' << rows.size() << ',' << get("ECG-wavelet") << ','
        << get("PLETH-wavelet") << ',' << get("ABP-wavelet") << ',' << get("ECG-HRV") << ','
        << (static_cast<int>(rows.size()) - known) << '\n';
  }
  log << "report -> " << out_path << '\n';
}

}  // namespace shapfs

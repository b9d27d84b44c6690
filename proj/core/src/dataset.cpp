#include "shapfs/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace shapfs {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

}  // namespace

FeatureMatrix load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_matrix: cannot open " + path);

  FeatureMatrix m;
  std::string line;
  std::string header;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.rfind("# tags:", 0) == 0) {
      m.tags = split_csv(line.substr(7));
      for (auto& t : m.tags) {
        t.erase(0, t.find_first_not_of(' '));
      }
      continue;
    }
    if (line[0] == '#') continue;
    header = line;
    break;
  }
  if (header.empty()) throw std::runtime_error("load_matrix: empty or headerless file " + path);

  auto cols = split_csv(header);
  if (cols.size() < 2 || cols.back() != "label")
    throw std::runtime_error("load_matrix: missing label column in " + path);
  m.names.assign(cols.begin(), cols.end() - 1);
  const std::size_t width = cols.size();

  std::vector<double> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    auto cells = split_csv(line);
    if (cells.size() != width)
      throw std::runtime_error("load_matrix: ragged row at line " + std::to_string(line_no) +
                               " (" + std::to_string(cells.size()) + " cells, expected " +
                               std::to_string(width) + ")");
    for (std::size_t c = 0; c + 1 < width; ++c) {
      std::size_t used = 0;
      double v;
      try {
        v = std::stod(cells[c], &used);
      } catch (const std::exception&) {
        throw std::runtime_error("load_matrix: non-numeric cell at line " +
                                 std::to_string(line_no) + " column " + std::to_string(c + 1));
      }
      if (used != cells[c].size() || !std::isfinite(v))
        throw std::runtime_error("load_matrix: non-finite value at line " +
                                 std::to_string(line_no) + " column " + std::to_string(c + 1));
      rows.push_back(v);
    }
    const std::string& lab = cells.back();
    if (lab == "1" || lab == "true" || lab == "true-alarm") m.labels.push_back(1);
    else if (lab == "0" || lab == "false" || lab == "false-alarm") m.labels.push_back(0);
    else throw std::runtime_error("load_matrix: bad label '" + lab + "' at line " + std::to_string(line_no));
  }
  if (m.labels.empty()) throw std::runtime_error("load_matrix: no data rows in " + path);

  m.x.rows = static_cast<int>(m.labels.size());
  m.x.cols = static_cast<int>(width) - 1;
  m.x.v = std::move(rows);
  if (!m.tags.empty() && m.tags.size() != static_cast<std::size_t>(m.x.cols))
    throw std::runtime_error("load_matrix: tag count does not match feature count");
  return m;
}

void save_matrix(const std::string& path, const FeatureMatrix& m) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_matrix: cannot open " + path);
  out.precision(17);
  if (!m.tags.empty()) {
    out << "# tags: ";
    for (std::size_t c = 0; c < m.tags.size(); ++c) out << (c ? "," : "") << m.tags[c];
    out << '\n';
  }
  for (const auto& n : m.names) out << n << ',';
  out << "label\n";
  for (int r = 0; r < m.x.rows; ++r) {
    for (int c = 0; c < m.x.cols; ++c) out << m.x.at(r, c) << ',';
    out << m.labels[static_cast<std::size_t>(r)] << '\n';
  }
}

NormStats zscore_normalize(FeatureMatrix& m, const std::vector<int>& train_rows) {
  if (train_rows.empty()) throw std::invalid_argument("zscore_normalize: empty training set");
  const int d = m.x.cols;
  NormStats st;
  st.mean.assign(static_cast<std::size_t>(d), 0.0);
  st.stddev.assign(static_cast<std::size_t>(d), 0.0);
  st.constant.assign(static_cast<std::size_t>(d), false);

  const double n = static_cast<double>(train_rows.size());
  for (int c = 0; c < d; ++c) {
    double mu = 0;
    for (int r : train_rows) mu += m.x.at(r, c);
    mu /= n;
    double var = 0;
    for (int r : train_rows) {
      const double e = m.x.at(r, c) - mu;
      var += e * e;
    }
    const double sd = std::sqrt(var / n);
    st.mean[static_cast<std::size_t>(c)] = mu;
    st.stddev[static_cast<std::size_t>(c)] = sd;
    if (sd == 0) {
      st.constant[static_cast<std::size_t>(c)] = true;
      for (int r = 0; r < m.x.rows; ++r) m.x.at(r, c) = 0.0;
    } else {
      for (int r = 0; r < m.x.rows; ++r) m.x.at(r, c) = (m.x.at(r, c) - mu) / sd;
    }
  }
  return st;
}

std::vector<int> FoldPlan::train_rows(int repeat, int fold, int n) const {
  std::vector<bool> in_test(static_cast<std::size_t>(n), false);
  for (int r : assignments[static_cast<std::size_t>(repeat)][static_cast<std::size_t>(fold)])
    in_test[static_cast<std::size_t>(r)] = true;
  std::vector<int> out;
  for (int r = 0; r < n; ++r)
    if (!in_test[static_cast<std::size_t>(r)]) out.push_back(r);
  return out;
}

FoldPlan repeated_kfold(int n, int k, int repeats, std::uint64_t seed,
                        const std::vector<int>& labels) {
  if (k < 2 || k > n) throw std::invalid_argument("repeated_kfold: need 2 <= k <= n");
  if (repeats < 1) throw std::invalid_argument("repeated_kfold: repeats must be >= 1");
  if (!labels.empty() && static_cast<int>(labels.size()) != n)
    throw std::invalid_argument("repeated_kfold: label count mismatch");

  FoldPlan plan;
  plan.k = k;
  plan.repeats = repeats;
  plan.seed = seed;

  std::mt19937_64 rng(seed);
  for (int rep = 0; rep < repeats; ++rep) {
    std::vector<std::vector<int>> folds(static_cast<std::size_t>(k));
    if (labels.empty()) {
      std::vector<int> idx(static_cast<std::size_t>(n));
      std::iota(idx.begin(), idx.end(), 0);
      std::shuffle(idx.begin(), idx.end(), rng);
      for (int j = 0; j < n; ++j) folds[static_cast<std::size_t>(j % k)].push_back(idx[static_cast<std::size_t>(j)]);
    } else {
      // stratified: deal each class round-robin after shuffling within
      // class; the dealing counter carries across classes so overall fold
      // sizes stay within 1 of each other
      std::size_t deal = 0;
      for (int cls = 0; cls <= 1; ++cls) {
        std::vector<int> idx;
        for (int r = 0; r < n; ++r)
          if ((labels[static_cast<std::size_t>(r)] != 0) == (cls == 1)) idx.push_back(r);
        std::shuffle(idx.begin(), idx.end(), rng);
        for (int r : idx) folds[deal++ % static_cast<std::size_t>(k)].push_back(r);
      }
    }
    for (auto& f : folds) std::sort(f.begin(), f.end());
    plan.assignments.push_back(std::move(folds));
  }
  return plan;
}

void write_fold_plan(const std::string& path, const FoldPlan& plan) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_fold_plan: cannot open " + path);
  out << "repeat,fold,test_indices\n";
  for (int rep = 0; rep < plan.repeats; ++rep)
    for (int f = 0; f < plan.k; ++f) {
      out << rep << ',' << f << ',';
      const auto& t = plan.assignments[static_cast<std::size_t>(rep)][static_cast<std::size_t>(f)];
      for (std::size_t j = 0; j < t.size(); ++j) out << (j ? " " : "") << t[j];
      out << '\n';
    }
}

}  // namespace shapfs

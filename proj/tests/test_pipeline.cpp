#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "shapfs/dataset.hpp"
#include "shapfs/features.hpp"
#include "shapfs/game.hpp"
#include "shapfs/pipeline.hpp"
#include "shapfs/selection.hpp"

using namespace shapfs;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("shapfs_pipe_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string read_all(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// small labeled matrix with the first two features informative
void write_planted_matrix(const std::string& path, int rows, int cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  FeatureMatrix m;
  m.x = Matrix(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const int label = r % 2;
    m.labels.push_back(label);
    for (int c = 0; c < cols; ++c) {
      double v = g(rng);
      if (c < 2) v += label ? 2.0 : -2.0;
      m.x.at(r, c) = v;
    }
  }
  for (int c = 0; c < cols; ++c) {
    m.names.push_back("f" + std::to_string(c));
    m.tags.push_back(c % 2 ? "ECG-HRV" : "ECG-wavelet");
  }
  save_matrix(path, m);
}

void write_test_record(const std::string& path, const std::string& id, int label,
                       std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 0.05);
  Record rec;
  rec.fs = 250.0;
  rec.label = label;
  rec.id = id;
  const std::size_t n = 1000;
  for (std::size_t k = 0; k < n; ++k) {
    double beat = (static_cast<int>(k) % 200 == 0) ? 1.0 : 0.0;
    rec.ecg.push_back(beat + g(rng));
    rec.abp.push_back(80.0 + 20.0 * std::sin(static_cast<double>(k) * 0.03) + g(rng));
    rec.pleth.push_back(std::sin(static_cast<double>(k) * 0.03) + g(rng));
  }
  write_record(path, rec);
}

}  // namespace

TEST_CASE("run config parsing") {
  RunConfig cfg;
  cfg.apply("method", "chi2");
  cfg.apply("mu", "3.5");
  cfg.apply("max_coalition_size", "12");
  cfg.apply("samples_per_size", "60");
  cfg.apply("population_size", "10");
  cfg.apply("top_k", "5");
  cfg.apply("seed", "99");
  cfg.apply("workers", "4");
  cfg.apply("inner_classifier", "nearest-centroid");
  cfg.apply("inner_holdout_fraction", "0.3");
  cfg.apply("adjustment_mode", "raw");
  cfg.apply("ex1_gamma", "0.5");
  cfg.apply("ex1_min_block", "7");
  cfg.apply("folds", "4");
  cfg.apply("repeats", "3");
  cfg.apply("bins", "8");
  cfg.apply("relief_neighbors", "3");
  cfg.apply("relief_iterations", "50");
  cfg.apply("eval_classifiers", "logistic,rusboost-lite");

  CHECK(cfg.method == "chi2");
  CHECK(cfg.mu == 3.5);
  CHECK(cfg.max_coalition_size == 12);
  CHECK(cfg.samples_per_size == 60);
  CHECK(cfg.population_size == 10);
  CHECK(cfg.top_k == 5);
  CHECK(cfg.seed == 99);
  CHECK(cfg.workers == 4);
  CHECK(cfg.inner_classifier == "nearest-centroid");
  CHECK(cfg.inner_holdout_fraction == 0.3);
  CHECK(cfg.adjustment_mode == "raw");
  CHECK(cfg.ex1_gamma == 0.5);
  CHECK(cfg.ex1_min_block == 7);
  CHECK(cfg.folds == 4);
  CHECK(cfg.repeats == 3);
  CHECK(cfg.bins == 8);
  CHECK(cfg.relief_neighbors == 3);
  CHECK(cfg.relief_iterations == 50);
  CHECK(cfg.eval_classifiers == std::vector<std::string>{"logistic", "rusboost-lite"});

  CHECK_THROWS_AS(cfg.apply("no_such_key", "1"), std::invalid_argument);
  CHECK_THROWS_AS(cfg.apply("mu", "abc"), std::invalid_argument);
}

TEST_CASE("run config file merge") {
  TempDir dir;
  {
    std::ofstream out(dir.file("run.conf"));
    out << "# a comment\n"
        << "method = mi\n"
        << "top_k=3\n"
        << "\n"
        << "seed = 5\n";
  }
  RunConfig cfg;
  cfg.merge_file(dir.file("run.conf"));
  CHECK(cfg.method == "mi");
  CHECK(cfg.top_k == 3);
  CHECK(cfg.seed == 5);
  CHECK(cfg.mu == 1.0);  // untouched default

  {
    std::ofstream out(dir.file("bad.conf"));
    out << "just words\n";
  }
  CHECK_THROWS_AS(cfg.merge_file(dir.file("bad.conf")), std::invalid_argument);
  CHECK_THROWS_AS(cfg.merge_file(dir.file("missing.conf")), std::runtime_error);
}

TEST_CASE("parallel selection matches serial exactly") {
  const auto game = WeightedInteractionGame::random(12, 3);
  SelectionConfig cfg;
  cfg.ga.population_size = 8;
  cfg.ga.samples_per_size = 20;
  cfg.ga.max_coalition_size = 6;
  cfg.ga.seed = 17;

  cfg.workers = 1;
  const auto serial = run_shapley_ga(game, cfg);
  cfg.workers = 4;
  const auto parallel = run_shapley_ga(game, cfg);

  REQUIRE(serial.phi.size() == parallel.phi.size());
  for (std::size_t i = 0; i < serial.phi.size(); ++i)
    CHECK(serial.phi[i] == parallel.phi[i]);
  CHECK(serial.size_means == parallel.size_means);
  CHECK(serial.total_evaluations == parallel.total_evaluations);
  CHECK(serial.total_evaluations > 0);
}

TEST_CASE("extract command") {
  TempDir dir;
  const auto records = dir.path / "records";
  fs::create_directories(records);
  write_test_record((records / "a02.csv").string(), "a02", 1, 2);
  write_test_record((records / "a01.csv").string(), "a01", 0, 1);
  {
    std::ofstream out(records / "broken.csv");
    out << "not a record\n";
  }

  std::ostringstream log;
  const auto out_path = dir.file("features.csv");
  cmd_extract(records.string(), out_path, log);

  CHECK(log.str().find("warning: skipping") != std::string::npos);
  CHECK(log.str().find("extracted 2 records") != std::string::npos);

  const auto m = load_matrix(out_path);
  CHECK(m.n_samples() == 2);
  CHECK(m.n_features() == 380);
  CHECK(m.labels == std::vector<int>{0, 1});  // sorted by id: a01 first
  CHECK(m.tags.size() == 380);

  // directory with only unreadable files
  const auto bad_dir = dir.path / "bad";
  fs::create_directories(bad_dir);
  {
    std::ofstream out(bad_dir / "x.csv");
    out << "garbage\n";
  }
  std::ostringstream log2;
  CHECK_THROWS_AS(cmd_extract(bad_dir.string(), dir.file("none.csv"), log2), std::runtime_error);
  CHECK_THROWS_AS(cmd_extract(dir.file("not_a_dir"), dir.file("none.csv"), log2),
                  std::invalid_argument);
}

TEST_CASE("select command with baseline methods") {
  TempDir dir;
  const auto matrix = dir.file("m.csv");
  write_planted_matrix(matrix, 80, 8, 4);

  for (const std::string method : {"chi2", "mi", "relief"}) {
    CAPTURE(method);
    RunConfig cfg;
    cfg.method = method;
    cfg.top_k = 4;
    cfg.seed = 7;
    std::ostringstream log;
    const auto out = dir.file("sel_" + method + ".csv");
    cmd_select(matrix, cfg, out, log);

    std::ifstream in(out);
    std::string line;
    std::getline(in, line);
    CHECK(line == "feature_index,feature_name,score,rank,tag");
    std::vector<std::string> rows;
    while (std::getline(in, line)) rows.push_back(line);
    REQUIRE(rows.size() == 4);
    // the two planted features come out on top
    CHECK((rows[0].rfind("0,f0,", 0) == 0 || rows[0].rfind("1,f1,", 0) == 0));
    CHECK((rows[1].rfind("0,f0,", 0) == 0 || rows[1].rfind("1,f1,", 0) == 0));
    CHECK(rows[0].find(",1,") != std::string::npos);  // rank column
  }

  RunConfig bad;
  bad.method = "pca";
  std::ostringstream log;
  CHECK_THROWS_AS(cmd_select(matrix, bad, dir.file("x.csv"), log), std::invalid_argument);
  bad.method = "chi2";
  bad.top_k = 100;
  CHECK_THROWS_AS(cmd_select(matrix, bad, dir.file("x.csv"), log), std::invalid_argument);
}

TEST_CASE("select command with the ga estimator") {
  TempDir dir;
  const auto matrix = dir.file("m.csv");
  write_planted_matrix(matrix, 60, 8, 9);

  RunConfig cfg;
  cfg.method = "shapley-ga";
  cfg.max_coalition_size = 4;
  cfg.samples_per_size = 10;
  cfg.population_size = 6;
  cfg.top_k = 4;
  cfg.seed = 11;
  cfg.inner_classifier = "nearest-centroid";

  std::ostringstream log1;
  cmd_select(matrix, cfg, dir.file("s1.csv"), log1);
  CHECK(log1.str().find("nu_evaluations=") != std::string::npos);
  CHECK(log1.str().find("nu_budget=640") != std::string::npos);  // 2 * 8 * 4 * 10
  CHECK(log1.str().find("distinct_coalitions=") != std::string::npos);

  // the logged evaluation count respects the budget
  std::uint64_t evals = 0, budget = 0;
  {
    std::istringstream ss(log1.str());
    std::string line;
    while (std::getline(ss, line)) {
      if (line.rfind("nu_evaluations=", 0) == 0) evals = std::stoull(line.substr(15));
      if (line.rfind("nu_budget=", 0) == 0) budget = std::stoull(line.substr(10));
    }
  }
  CHECK(evals > 0);
  CHECK(evals <= budget);

  std::string first = read_all(dir.file("s1.csv"));
  CHECK(first.rfind("feature_index,feature_name,shapley_value,rank,tag", 0) == 0);

  // byte-identical rerun
  std::ostringstream log2;
  cmd_select(matrix, cfg, dir.file("s2.csv"), log2);
  CHECK(read_all(dir.file("s2.csv")) == first);
  // identical stats; the trailing line differs only in the output path
  CHECK(log2.str().substr(0, log2.str().find("selected")) ==
        log1.str().substr(0, log1.str().find("selected")));

  // exact method on the same small problem
  RunConfig ex = cfg;
  ex.method = "shapley-exact";
  std::ostringstream log3;
  cmd_select(matrix, ex, dir.file("s3.csv"), log3);
  CHECK(read_all(dir.file("s3.csv")).rfind("feature_index,feature_name,shapley_value,rank,tag", 0) == 0);
}

TEST_CASE("evaluate command") {
  TempDir dir;
  const auto matrix = dir.file("m.csv");
  write_planted_matrix(matrix, 80, 8, 21);

  RunConfig sel_cfg;
  sel_cfg.method = "chi2";
  sel_cfg.top_k = 3;
  std::ostringstream log;
  const auto selection = dir.file("sel.csv");
  cmd_select(matrix, sel_cfg, selection, log);

  RunConfig cfg;
  cfg.folds = 3;
  cfg.repeats = 2;
  cfg.seed = 13;
  std::ostringstream elog;
  cmd_evaluate(matrix, selection, cfg, dir.file("eval"), elog);

  std::ifstream in(dir.file("eval_metrics.csv"));
  std::string line;
  std::getline(in, line);
  CHECK(line == "repeat,fold,classifier,accuracy,auc,sensitivity,specificity");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 3 * 2 * 3);  // folds * repeats * classifiers

  for (const std::string k : {"logistic", "nearest-centroid", "rusboost-lite"}) {
    CHECK(fs::exists(dir.file("eval_roc_" + k + ".csv")));
    CHECK(elog.str().find("mean " + k + ":") != std::string::npos);
    CHECK(elog.str().find("pooled auc " + k + "=") != std::string::npos);
  }

  // the planted features carry the label; every classifier should do well
  {
    std::ifstream mi(dir.file("eval_metrics.csv"));
    std::getline(mi, line);
    while (std::getline(mi, line)) {
      std::istringstream ss(line);
      std::string cell;
      std::getline(ss, cell, ',');
      std::getline(ss, cell, ',');
      std::getline(ss, cell, ',');
      std::getline(ss, cell, ',');
      CHECK(std::stod(cell) > 0.7);  // accuracy
    }
  }

  RunConfig bad = cfg;
  bad.eval_classifiers = {"svm"};
  std::ostringstream l2;
  CHECK_THROWS_AS(cmd_evaluate(matrix, selection, bad, dir.file("e2"), l2),
                  std::invalid_argument);
}

TEST_CASE("report command") {
  TempDir dir;
  {
    std::ofstream out(dir.file("ga.csv"));
    out << "feature_index,feature_name,shapley_value,rank,tag\n"
        << "0,f0,0.9,1,ECG-wavelet\n"
        << "3,f3,0.8,2,ECG-HRV\n"
        << "5,f5,0.7,3,ABP-wavelet\n"
        << "6,f6,0.6,4,mystery\n";
  }
  {
    std::ofstream out(dir.file("chi2.csv"));
    out << "feature_index,feature_name,score,rank,tag\n"
        << "1,f1,5.0,1,PLETH-wavelet\n"
        << "2,f2,4.0,2,PLETH-wavelet\n";
  }

  std::ostringstream log;
  const auto out_path = dir.file("report.csv");
  cmd_report({dir.file("ga.csv"), dir.file("chi2.csv")}, out_path, log);

  std::ifstream in(out_path);
  std::string line;
  std::getline(in, line);
  CHECK(line == "method,total,ecg_wavelet,pleth_wavelet,abp_wavelet,ecg_hrv,untagged");
  std::getline(in, line);
  CHECK(line == "ga,4,1,0,1,1,1");
  std::getline(in, line);
  CHECK(line == "chi2,2,0,2,0,0,0");

  CHECK_THROWS_AS(cmd_report({}, out_path, log), std::invalid_argument);
}

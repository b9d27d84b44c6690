// Command-line driver for the feature-selection pipeline:
//   shapfs extract  --records <dir> --out matrix.csv
//   shapfs select   --matrix matrix.csv --method shapley-ga --out sel.csv
//   shapfs evaluate --matrix matrix.csv --selection sel.csv --out run
//   shapfs report   --selections a.csv b.csv --out freq.csv

#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "shapfs/pipeline.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Shapley-value feature selection for physiological alarm data"};
  app.require_subcommand(1);

  shapfs::RunConfig cfg;
  std::string config_path;
  std::string records_dir, matrix_path, selection_path, out_path;
  std::vector<std::string> selection_files;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "key=value configuration file");
    sub->add_option("--seed", cfg.seed, "master RNG seed");
    sub->add_option("--workers", cfg.workers, "worker thread count");
    sub->add_option("--out", out_path, "output path")->required();
  };

  auto* extract = app.add_subcommand("extract", "record files -> feature matrix");
  extract->add_option("--records", records_dir, "directory of record files")->required();
  add_common(extract);

  auto* select = app.add_subcommand("select", "rank features and write the top-k");
  select->add_option("--matrix", matrix_path, "feature matrix file")->required();
  select->add_option("--method", cfg.method,
                     "shapley-ga | shapley-exact | chi2 | mi | relief");
  select->add_option("--mu", cfg.mu, "sensitivity/specificity mixing weight");
  select->add_option("--max-coalition-size", cfg.max_coalition_size, "n_f^max");
  select->add_option("--samples-per-size", cfg.samples_per_size, "n_G");
  select->add_option("--population", cfg.population_size, "GA population n_p");
  select->add_option("--top-k", cfg.top_k, "features to keep");
  add_common(select);

  auto* evaluate = app.add_subcommand("evaluate", "repeated k-fold evaluation");
  evaluate->add_option("--matrix", matrix_path, "feature matrix file")->required();
  evaluate->add_option("--selection", selection_path, "selection file")->required();
  evaluate->add_option("--folds", cfg.folds, "fold count k");
  evaluate->add_option("--repeats", cfg.repeats, "k-fold repeats");
  add_common(evaluate);

  auto* report = app.add_subcommand("report", "selection frequency by signal source");
  report->add_option("--selections", selection_files, "selection files")->required();
  add_common(report);

  CLI11_PARSE(app, argc, argv);

  try {
    if (!config_path.empty()) {
      // file values fill in every option not given explicitly on the line
      shapfs::RunConfig base;
      base.merge_file(config_path);
      CLI::App* sub = app.get_subcommands().front();
      if (sub->get_option_no_throw("--mu") && sub->count("--mu")) base.mu = cfg.mu;
      if (sub->get_option_no_throw("--max-coalition-size") && sub->count("--max-coalition-size"))
        base.max_coalition_size = cfg.max_coalition_size;
      if (sub->get_option_no_throw("--samples-per-size") && sub->count("--samples-per-size"))
        base.samples_per_size = cfg.samples_per_size;
      if (sub->get_option_no_throw("--population") && sub->count("--population"))
        base.population_size = cfg.population_size;
      if (sub->get_option_no_throw("--top-k") && sub->count("--top-k")) base.top_k = cfg.top_k;
      if (sub->get_option_no_throw("--folds") && sub->count("--folds")) base.folds = cfg.folds;
      if (sub->get_option_no_throw("--repeats") && sub->count("--repeats")) base.repeats = cfg.repeats;
      if (sub->count("--seed")) base.seed = cfg.seed;
      if (sub->count("--workers")) base.workers = cfg.workers;
      if (sub->get_option_no_throw("--method") && sub->count("--method")) base.method = cfg.method;
      cfg = base;
    }

    if (extract->parsed()) shapfs::cmd_extract(records_dir, out_path, std::cout);
    else if (select->parsed()) shapfs::cmd_select(matrix_path, cfg, out_path, std::cout);
    else if (evaluate->parsed()) shapfs::cmd_evaluate(matrix_path, selection_path, cfg, out_path, std::cout);
    else if (report->parsed()) shapfs::cmd_report(selection_files, out_path, std::cout);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

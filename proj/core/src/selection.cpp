#include "shapfs/selection.hpp"

#include <atomic>
#include <thread>
#include <vector>

namespace shapfs {

ShapleyReport run_shapley_ga(const GameOracle& game, const SelectionConfig& cfg) {
  const int n_f = game.player_count();
  cfg.ga.validate(n_f);
  const int max_size = cfg.ga.max_coalition_size;

  CountingGame counted(game);

  struct Task {
    int focal, size;
    double mean = 0;
    int count = 0;
  };
  std::vector<Task> tasks;
  for (int i = 0; i < n_f; ++i)
    for (int t = 0; t < max_size; ++t) tasks.push_back({i, t});

  auto run_task = [&](Task& task) {
    const SampleSet ss = collect_samples(counted, task.focal, task.size, cfg.ga);
    task.mean = adjusted_mean(ss, n_f, cfg.ga.samples_per_size, cfg.ex1);
    task.count = static_cast<int>(ss.samples.size());
  };

  const int workers = std::max(1, cfg.workers);
  if (workers == 1) {
    for (auto& task : tasks) run_task(task);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (;;) {
          const std::size_t k = next.fetch_add(1);
          if (k >= tasks.size()) return;
          run_task(tasks[k]);
        }
      });
    for (auto& th : pool) th.join();
  }

  ShapleyReport report;
  for (const auto& task : tasks) {
    report.size_means[{task.focal, task.size}] = task.mean;
    report.size_counts[{task.focal, task.size}] = task.count;
  }
  report.phi = truncated_shapley(report.size_means, n_f, max_size);
  report.total_evaluations = counted.calls();
  return report;
}

}  // namespace shapfs

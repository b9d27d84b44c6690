#include "shapfs/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <stdexcept>

namespace shapfs {

std::vector<int> ScoreVector::ranking() const {
  std::vector<int> idx(scores.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
    return higher_is_better ? scores[static_cast<std::size_t>(a)] > scores[static_cast<std::size_t>(b)]
                            : scores[static_cast<std::size_t>(a)] < scores[static_cast<std::size_t>(b)];
  });
  return idx;
}

namespace {

// Equal-width bin index over [min, max]; all samples land in bin 0 for a
// constant feature.
std::vector<int> bin_feature(const FeatureMatrix& m, int f, int bins) {
  double lo = m.x.at(0, f), hi = lo;
  for (int r = 1; r < m.x.rows; ++r) {
    lo = std::min(lo, m.x.at(r, f));
    hi = std::max(hi, m.x.at(r, f));
  }
  std::vector<int> out(static_cast<std::size_t>(m.x.rows), 0);
  if (hi <= lo) return out;
  const double w = (hi - lo) / bins;
  for (int r = 0; r < m.x.rows; ++r) {
    int b = static_cast<int>((m.x.at(r, f) - lo) / w);
    out[static_cast<std::size_t>(r)] = std::min(b, bins - 1);
  }
  return out;
}

void check_binary(const FeatureMatrix& m) {
  bool pos = false, neg = false;
  for (int y : m.labels) (y != 0 ? pos : neg) = true;
  if (!pos || !neg) throw std::invalid_argument("baseline scorer: both classes required");
}

}  // namespace

ScoreVector chi2_scores(const FeatureMatrix& m, int bins) {
  if (bins < 2) throw std::invalid_argument("chi2_scores: bins must be >= 2");
  check_binary(m);
  const int n = m.x.rows;
  ScoreVector sv;
  sv.method = "chi2";
  sv.scores.assign(static_cast<std::size_t>(m.x.cols), 0.0);

  long n_pos = 0;
  for (int y : m.labels) n_pos += (y != 0);
  const double p_pos = static_cast<double>(n_pos) / n;

  for (int f = 0; f < m.x.cols; ++f) {
    const auto b = bin_feature(m, f, bins);
    std::vector<long> count_pos(static_cast<std::size_t>(bins), 0), count_all(static_cast<std::size_t>(bins), 0);
    for (int r = 0; r < n; ++r) {
      ++count_all[static_cast<std::size_t>(b[static_cast<std::size_t>(r)])];
      if (m.labels[static_cast<std::size_t>(r)] != 0) ++count_pos[static_cast<std::size_t>(b[static_cast<std::size_t>(r)])];
    }
    double stat = 0;
    for (int j = 0; j < bins; ++j) {
      const double nb = static_cast<double>(count_all[static_cast<std::size_t>(j)]);
      if (nb == 0) continue;
      const double obs_pos = static_cast<double>(count_pos[static_cast<std::size_t>(j)]);
      const double exp_pos = nb * p_pos;
      const double exp_neg = nb * (1.0 - p_pos);
      if (exp_pos > 0) stat += (obs_pos - exp_pos) * (obs_pos - exp_pos) / exp_pos;
      if (exp_neg > 0) stat += ((nb - obs_pos) - exp_neg) * ((nb - obs_pos) - exp_neg) / exp_neg;
    }
    sv.scores[static_cast<std::size_t>(f)] = stat;
  }
  return sv;
}

ScoreVector mi_scores(const FeatureMatrix& m, int bins) {
  if (bins < 2) throw std::invalid_argument("mi_scores: bins must be >= 2");
  check_binary(m);
  const int n = m.x.rows;
  ScoreVector sv;
  sv.method = "mi";
  sv.scores.assign(static_cast<std::size_t>(m.x.cols), 0.0);

  for (int f = 0; f < m.x.cols; ++f) {
    const auto b = bin_feature(m, f, bins);
    std::vector<double> joint(static_cast<std::size_t>(bins) * 2, 0.0);
    std::vector<double> pb(static_cast<std::size_t>(bins), 0.0);
    double py[2] = {0, 0};
    const double inv_n = 1.0 / n;
    for (int r = 0; r < n; ++r) {
      const int y = m.labels[static_cast<std::size_t>(r)] != 0 ? 1 : 0;
      joint[static_cast<std::size_t>(b[static_cast<std::size_t>(r)]) * 2 + static_cast<std::size_t>(y)] += inv_n;
      pb[static_cast<std::size_t>(b[static_cast<std::size_t>(r)])] += inv_n;
      py[y] += inv_n;
    }
    double mi = 0;
    for (int j = 0; j < bins; ++j)
      for (int y = 0; y < 2; ++y) {
        const double p = joint[static_cast<std::size_t>(j) * 2 + static_cast<std::size_t>(y)];
        if (p > 0) mi += p * std::log(p / (pb[static_cast<std::size_t>(j)] * py[y]));
      }
    sv.scores[static_cast<std::size_t>(f)] = std::max(0.0, mi);
  }
  return sv;
}

ScoreVector relief_scores(const FeatureMatrix& m, int n_neighbors,
                          int n_iterations, std::uint64_t seed) {
  check_binary(m);
  const int n = m.x.rows, d = m.x.cols;
  if (n_neighbors < 1) throw std::invalid_argument("relief_scores: n_neighbors must be >= 1");

  // per-feature value range for distance normalization
  std::vector<double> lo(static_cast<std::size_t>(d)), hi(static_cast<std::size_t>(d));
  for (int f = 0; f < d; ++f) {
    lo[static_cast<std::size_t>(f)] = hi[static_cast<std::size_t>(f)] = m.x.at(0, f);
    for (int r = 1; r < n; ++r) {
      lo[static_cast<std::size_t>(f)] = std::min(lo[static_cast<std::size_t>(f)], m.x.at(r, f));
      hi[static_cast<std::size_t>(f)] = std::max(hi[static_cast<std::size_t>(f)], m.x.at(r, f));
    }
  }
  std::vector<double> range(static_cast<std::size_t>(d));
  for (int f = 0; f < d; ++f) {
    const double rg = hi[static_cast<std::size_t>(f)] - lo[static_cast<std::size_t>(f)];
    range[static_cast<std::size_t>(f)] = rg > 0 ? rg : 1.0;
  }

  const int iters = std::min(n, n_iterations);
  std::mt19937_64 rng(seed);
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);

  ScoreVector sv;
  sv.method = "relief";
  sv.scores.assign(static_cast<std::size_t>(d), 0.0);

  std::vector<std::pair<double, int>> dist;
  for (int it = 0; it < iters; ++it) {
    const int r0 = order[static_cast<std::size_t>(it)];
    const auto x0 = m.x.row(r0);
    const int y0 = m.labels[static_cast<std::size_t>(r0)];

    for (int want_hit = 0; want_hit < 2; ++want_hit) {
      dist.clear();
      for (int r = 0; r < n; ++r) {
        if (r == r0) continue;
        const bool same = m.labels[static_cast<std::size_t>(r)] == y0;
        if (same != (want_hit == 1)) continue;
        double dd = 0;
        const auto xr = m.x.row(r);
        for (int f = 0; f < d; ++f) {
          const double e = (x0[static_cast<std::size_t>(f)] - xr[static_cast<std::size_t>(f)]) / range[static_cast<std::size_t>(f)];
          dd += e * e;
        }
        dist.push_back({dd, r});
      }
      const int kk = std::min<int>(n_neighbors, static_cast<int>(dist.size()));
      if (kk == 0) continue;
      std::partial_sort(dist.begin(), dist.begin() + kk, dist.end());
      const double sign = want_hit ? -1.0 : 1.0;
      const double scale = sign / (static_cast<double>(iters) * kk);
      for (int j = 0; j < kk; ++j) {
        const auto xr = m.x.row(dist[static_cast<std::size_t>(j)].second);
        for (int f = 0; f < d; ++f)
          sv.scores[static_cast<std::size_t>(f)] +=
              scale * std::abs(x0[static_cast<std::size_t>(f)] - xr[static_cast<std::size_t>(f)]) / range[static_cast<std::size_t>(f)];
      }
    }
  }
  return sv;
}

void write_scores(const std::string& path, const ScoreVector& sv,
                  const std::vector<std::string>& names) {
  if (!names.empty() && names.size() != sv.scores.size())
    throw std::invalid_argument("write_scores: name count mismatch");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_scores: cannot open " + path);
  out << "feature,method,score,rank\n";
  out.precision(17);
  int rank = 1;
  for (int i : sv.ranking()) {
    const std::string& name =
        names.empty() ? ("f" + std::to_string(i)) : names[static_cast<std::size_t>(i)];
    out << name << ',' << sv.method << ',' << sv.scores[static_cast<std::size_t>(i)] << ',' << rank++ << '\n';
  }
}

}  // namespace shapfs

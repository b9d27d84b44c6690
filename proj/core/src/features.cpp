#include "shapfs/features.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace shapfs {

void Record::validate() const {
  if (fs <= 0) throw std::invalid_argument("Record: sampling rate must be positive");
  if (ecg.size() != abp.size() || ecg.size() != pleth.size())
    throw std::invalid_argument("Record: channel lengths differ");
  if (ecg.empty()) throw std::invalid_argument("Record: empty channels");
}

Record read_record(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_record: cannot open " + path);

  Record rec;
  std::string line;
  if (!std::getline(in, line) || line.rfind("#", 0) != 0)
    throw std::runtime_error("read_record: missing sidecar line in " + path);
  {
    std::istringstream ss(line.substr(1));
    std::string kv;
    bool have_fs = false, have_label = false;
    while (ss >> kv) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) continue;
      const std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
      if (key == "fs") { rec.fs = std::stod(val); have_fs = true; }
      else if (key == "label") {
        if (val == "1" || val == "true" || val == "true-alarm") rec.label = 1;
        else if (val == "0" || val == "false" || val == "false-alarm") rec.label = 0;
        else throw std::runtime_error("read_record: bad label '" + val + "' in " + path);
        have_label = true;
      } else if (key == "id") rec.id = val;
    }
    if (!have_fs || !have_label)
      throw std::runtime_error("read_record: sidecar line must carry fs and label in " + path);
  }
  if (rec.id.empty()) {
    const auto slash = path.find_last_of('/');
    rec.id = slash == std::string::npos ? path : path.substr(slash + 1);
    const auto dot = rec.id.find_last_of('.');
    if (dot != std::string::npos) rec.id.resize(dot);
  }

  if (!std::getline(in, line)) throw std::runtime_error("read_record: missing channel header in " + path);
  if (line != "ECG_II,ABP,PLETH")
    throw std::runtime_error("read_record: unexpected channel header '" + line + "' in " + path);

  int line_no = 2;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ss(line);
    double a, b, c;
    char c1, c2;
    if (!(ss >> a >> c1 >> b >> c2 >> c) || c1 != ',' || c2 != ',')
      throw std::runtime_error("read_record: bad sample row at line " + std::to_string(line_no) +
                               " in " + path);
    rec.ecg.push_back(a);
    rec.abp.push_back(b);
    rec.pleth.push_back(c);
  }
  rec.validate();
  return rec;
}

void write_record(const std::string& path, const Record& rec) {
  rec.validate();
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_record: cannot open " + path);
  out.precision(17);
  out << "# fs=" << rec.fs << " label=" << rec.label;
  if (!rec.id.empty()) out << " id=" << rec.id;
  out << "\nECG_II,ABP,PLETH\n";
  for (std::size_t k = 0; k < rec.ecg.size(); ++k)
    out << rec.ecg[k] << ',' << rec.abp[k] << ',' << rec.pleth[k] << '\n';
}

const std::array<std::string, kStatCount>& stat_names() {
  static const std::array<std::string, kStatCount> names = {
      "mean", "mode", "median", "max", "min", "range", "variance", "std",
      "mu3", "mu4", "cv", "kurtosis", "skewness", "hmean", "iqr",
      "shannon_ent", "logenergy_ent", "nt_half", "nt_third", "nt_quarter"};
  return names;
}

namespace {

constexpr int kHistBins = 32;
constexpr double kZeroClamp = 1e-12;

// quantile by linear interpolation at position (n-1)p over the sorted data
double quantile(const std::vector<double>& sorted, double p) {
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(pos);
  const double frac = pos - static_cast<double>(lo);
  if (lo + 1 >= sorted.size()) return sorted.back();
  return sorted[lo] * (1.0 - frac) + sorted[lo + 1] * frac;
}

}  // namespace

std::array<double, kStatCount> stat_features(const std::vector<double>& v) {
  if (v.size() < 2) throw std::invalid_argument("stat_features: need at least 2 samples");
  const double n = static_cast<double>(v.size());

  double mean = 0;
  for (double x : v) mean += x;
  mean /= n;

  std::vector<double> sorted = v;
  std::sort(sorted.begin(), sorted.end());
  const double vmin = sorted.front(), vmax = sorted.back();
  const double range = vmax - vmin;
  const double median = quantile(sorted, 0.5);
  const double iqr = quantile(sorted, 0.75) - quantile(sorted, 0.25);

  double m2 = 0, m3 = 0, m4 = 0;
  for (double x : v) {
    const double e = x - mean;
    m2 += e * e;
    m3 += e * e * e;
    m4 += e * e * e * e;
  }
  m2 /= n; m3 /= n; m4 /= n;
  const double sd = std::sqrt(m2);
  const double skew = sd > 0 ? m3 / (sd * sd * sd) : 0.0;
  const double kurt = sd > 0 ? m4 / (m2 * m2) : 0.0;
  const double cv = std::abs(mean) > kZeroClamp ? sd / mean : 0.0;

  double hsum = 0;
  for (double x : v) hsum += 1.0 / std::max(std::abs(x), kZeroClamp);
  const double hmean = n / hsum;

  // mode + Shannon entropy over a shared 32-bin value histogram
  double mode = vmin, shannon = 0;
  if (range > 0) {
    std::array<long, kHistBins> hist{};
    const double w = range / kHistBins;
    for (double x : v) {
      int b = static_cast<int>((x - vmin) / w);
      ++hist[static_cast<std::size_t>(std::min(b, kHistBins - 1))];
    }
    long best = -1;
    for (int b = 0; b < kHistBins; ++b) {
      if (hist[static_cast<std::size_t>(b)] > best) {
        best = hist[static_cast<std::size_t>(b)];
        mode = vmin + (b + 0.5) * w;
      }
      const double p = static_cast<double>(hist[static_cast<std::size_t>(b)]) / n;
      if (p > 0) shannon -= p * std::log(p);
    }
  }

  double log_energy = 0;
  for (double x : v) log_energy += std::log(std::max(x * x, kZeroClamp));

  const double amax = std::abs(vmax) > std::abs(vmin) ? std::abs(vmax) : std::abs(vmin);
  auto count_above = [&](double thr) {
    double c = 0;
    for (double x : v)
      if (std::abs(x) > thr) c += 1.0;
    return c;
  };

  return {mean, mode, median, vmax, vmin, range, m2, sd,
          m3, m4, cv, kurt, skew, hmean, iqr,
          shannon, log_energy,
          count_above(amax / 2.0), count_above(amax / 3.0), count_above(amax / 4.0)};
}

namespace {

// centered moving average, truncated at the edges
std::vector<double> moving_average(const std::vector<double>& x, int w) {
  if (w < 1) w = 1;
  const int n = static_cast<int>(x.size());
  const int half = w / 2;
  std::vector<double> prefix(static_cast<std::size_t>(n) + 1, 0.0);
  for (int k = 0; k < n; ++k)
    prefix[static_cast<std::size_t>(k) + 1] = prefix[static_cast<std::size_t>(k)] + x[static_cast<std::size_t>(k)];
  std::vector<double> out(static_cast<std::size_t>(n), 0.0);
  for (int k = 0; k < n; ++k) {
    const int lo = std::max(0, k - half);
    const int hi = std::min(n, k + half + 1);
    out[static_cast<std::size_t>(k)] =
        (prefix[static_cast<std::size_t>(hi)] - prefix[static_cast<std::size_t>(lo)]) / (hi - lo);
  }
  return out;
}

double median_of(std::vector<double> v) {
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  return v[mid];
}

}  // namespace

std::vector<int> detect_rpeaks(const std::vector<double>& ecg, double fs) {
  if (fs < 100 || fs > 1000) throw std::invalid_argument("detect_rpeaks: fs must be in [100, 1000] Hz");
  if (static_cast<double>(ecg.size()) < 2 * fs)
    throw std::invalid_argument("detect_rpeaks: need at least 2 s of signal");

  const int n = static_cast<int>(ecg.size());
  std::vector<double> env(static_cast<std::size_t>(n), 0.0);
  for (int k = 0; k + 1 < n; ++k) {
    const double d = ecg[static_cast<std::size_t>(k + 1)] - ecg[static_cast<std::size_t>(k)];
    env[static_cast<std::size_t>(k)] = d * d;
  }
  env = moving_average(env, static_cast<int>(0.15 * fs));

  // rolling median + k*MAD over a 2 s window
  const int half_win = static_cast<int>(fs);  // 1 s either side
  constexpr double kMadFactor = 4.0;
  std::vector<double> thr(static_cast<std::size_t>(n), 0.0);
  std::vector<double> win, dev;
  for (int k = 0; k < n; ++k) {
    const int lo = std::max(0, k - half_win);
    const int hi = std::min(n, k + half_win + 1);
    win.assign(env.begin() + lo, env.begin() + hi);
    const double med = median_of(win);
    dev.resize(win.size());
    for (std::size_t j = 0; j < win.size(); ++j) dev[j] = std::abs(win[j] - med);
    thr[static_cast<std::size_t>(k)] = med + kMadFactor * median_of(dev);
  }

  const int refractory = static_cast<int>(0.2 * fs);
  const int refine = static_cast<int>(0.1 * fs);
  std::vector<int> peaks;
  int k = 1;
  while (k + 1 < n) {
    if (env[static_cast<std::size_t>(k)] > thr[static_cast<std::size_t>(k)] &&
        env[static_cast<std::size_t>(k)] >= env[static_cast<std::size_t>(k - 1)] &&
        env[static_cast<std::size_t>(k)] >= env[static_cast<std::size_t>(k + 1)]) {
      // refine to the raw-signal maximum around the envelope event
      int best = k;
      for (int j = std::max(0, k - refine); j < std::min(n, k + refine + 1); ++j)
        if (ecg[static_cast<std::size_t>(j)] > ecg[static_cast<std::size_t>(best)]) best = j;
      if (peaks.empty() || best - peaks.back() > refractory) {
        peaks.push_back(best);
      } else if (ecg[static_cast<std::size_t>(best)] > ecg[static_cast<std::size_t>(peaks.back())]) {
        peaks.back() = best;
      }
      k += refractory;
    } else {
      ++k;
    }
  }
  return peaks;
}

std::vector<double> hrv_signal(const std::vector<int>& rpeaks, double fs) {
  if (rpeaks.size() < 3) throw std::invalid_argument("hrv_signal: need at least 3 peaks");
  std::vector<double> out;
  out.reserve(rpeaks.size() - 1);
  for (std::size_t k = 0; k + 1 < rpeaks.size(); ++k) {
    const double rr = static_cast<double>(rpeaks[k + 1] - rpeaks[k]) / fs;
    if (rr <= 0) throw std::invalid_argument("hrv_signal: peaks must be strictly ascending");
    out.push_back(1.0 / rr);
  }
  return out;
}

FeatureVector380 extract_all(const Record& rec) {
  rec.validate();

  FeatureVector380 fv;
  fv.values.reserve(kFeatureCount);
  fv.names.reserve(kFeatureCount);
  fv.tags.reserve(kFeatureCount);

  struct ChannelSpec {
    const std::vector<double>* signal;
    const char* name;
    const char* tag;
    WaveletFamily family;
  };
  const ChannelSpec channels[] = {
      {&rec.ecg, "ECG", "ECG-wavelet", WaveletFamily::db8},
      {&rec.abp, "ABP", "ABP-wavelet", WaveletFamily::db4},
      {&rec.pleth, "PLETH", "PLETH-wavelet", WaveletFamily::db4},
  };

  for (const auto& ch : channels) {
    WaveletSpec spec;
    spec.family = ch.family;
    const DwtPyramid pyr = dwt_decompose(*ch.signal, spec);
    for (int lvl = 0; lvl < spec.levels; ++lvl) {
      const auto stats = stat_features(pyr.details[static_cast<std::size_t>(lvl)]);
      for (int s = 0; s < kStatCount; ++s) {
        fv.values.push_back(stats[static_cast<std::size_t>(s)]);
        fv.names.push_back(std::string(ch.name) + "_D" + std::to_string(lvl + 1) + "_" +
                           stat_names()[static_cast<std::size_t>(s)]);
        fv.tags.push_back(ch.tag);
      }
    }
  }

  // HRV block; substituted with zeros when too few peaks are found
  std::array<double, kStatCount> hrv_stats{};
  try {
    const auto peaks = detect_rpeaks(rec.ecg, rec.fs);
    hrv_stats = stat_features(hrv_signal(peaks, rec.fs));
  } catch (const std::invalid_argument&) {
    fv.hrv_fallback = true;
  }
  for (int s = 0; s < kStatCount; ++s) {
    fv.values.push_back(fv.hrv_fallback ? 0.0 : hrv_stats[static_cast<std::size_t>(s)]);
    fv.names.push_back(std::string("HRV_") + stat_names()[static_cast<std::size_t>(s)]);
    fv.tags.push_back("ECG-HRV");
  }

  for (double v : fv.values)
    if (!std::isfinite(v)) throw std::runtime_error("extract_all: non-finite feature value");
  return fv;
}

}  // namespace shapfs

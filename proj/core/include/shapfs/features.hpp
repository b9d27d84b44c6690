#pragma once

#include <array>
#include <string>
#include <vector>

#include "shapfs/wavelet.hpp"

namespace shapfs {

/// One alarm record: three synchronized channels plus the label.
struct Record {
  std::vector<double> ecg;    // ECG II
  std::vector<double> abp;    // arterial blood pressure
  std::vector<double> pleth;  // photoplethysmogram
  double fs = 250.0;          // Hz
  int label = 0;              // 1 = true alarm
  std::string id;

  void validate() const;
};

/// "# fs=... label=... id=..." sidecar line, "ECG_II,ABP,PLETH" header,
/// then one sample per row.
Record read_record(const std::string& path);
void write_record(const std::string& path, const Record& rec);

inline constexpr int kStatCount = 20;
inline constexpr int kFeatureCount = 380;  // 3 channels * 6 subbands * 20 + HRV * 20

/// Names of the 20 per-vector statistics, in layout order.
const std::array<std::string, kStatCount>& stat_names();

/// The 20 statistical and information-theoretic descriptors of a
/// coefficient vector: mean, mode, median, max, min, range, variance, std,
/// mu3, mu4, coefficient of variation, kurtosis, skewness, harmonic mean
/// of magnitudes, IQR, Shannon entropy, log-energy entropy, and strict
/// magnitude-threshold counts at |max|/2, |max|/3, |max|/4.
std::array<double, kStatCount> stat_features(const std::vector<double>& v);

/// Local maxima of a smoothed squared-derivative envelope above a rolling
/// median + k*MAD threshold, 200 ms refractory. Flat input yields an empty
/// list.
std::vector<int> detect_rpeaks(const std::vector<double>& ecg, double fs);

/// Instantaneous rate per R-R interval, in Hz; length = peaks - 1.
std::vector<double> hrv_signal(const std::vector<int>& rpeaks, double fs);

struct FeatureVector380 {
  std::vector<double> values;       // 380 entries
  std::vector<std::string> names;   // e.g. "ECG_D3_kurtosis"
  std::vector<std::string> tags;    // source group, e.g. "ECG-wavelet"
  bool hrv_fallback = false;        // HRV block substituted with zeros
};

/// db8 on ECG II, db4 on ABP and PLETH, detail subbands D1..D6 each, 20
/// stats per subband, plus 20 stats of the HRV signal.
FeatureVector380 extract_all(const Record& rec);

}  // namespace shapfs

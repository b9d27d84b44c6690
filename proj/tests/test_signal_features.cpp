#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "shapfs/features.hpp"
#include "shapfs/wavelet.hpp"

using namespace shapfs;

namespace {

std::vector<double> random_signal(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> out(n);
  for (auto& v : out) v = g(rng);
  return out;
}

// impulse-train ECG: a sharp beat every `period` samples over a noisy floor
std::vector<double> synthetic_ecg(std::size_t n, int period, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 0.01);
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    out[k] = g(rng);
    const int phase = static_cast<int>(k) % period;
    if (phase == 0) out[k] += 1.0;
    if (phase == 1 || phase == period - 1) out[k] += 0.3;
  }
  return out;
}

}  // namespace

TEST_CASE("scaling filters are orthonormal quadrature filters") {
  for (auto fam : {WaveletFamily::db4, WaveletFamily::db8}) {
    const auto& h = scaling_filter(fam);
    CHECK(h.size() == (fam == WaveletFamily::db4 ? 8 : 16));

    double sum = 0, sum2 = 0;
    for (double c : h) {
      sum += c;
      sum2 += c * c;
    }
    CHECK(sum == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(sum2 == doctest::Approx(1.0).epsilon(1e-12));

    // even-shift orthogonality
    for (std::size_t shift = 2; shift < h.size(); shift += 2) {
      double dot = 0;
      for (std::size_t m = 0; m + shift < h.size(); ++m) dot += h[m] * h[m + shift];
      CHECK(std::abs(dot) < 1e-12);
    }
  }
  CHECK(wavelet_from_string("db4") == WaveletFamily::db4);
  CHECK(wavelet_from_string("db8") == WaveletFamily::db8);
  CHECK_THROWS_AS(wavelet_from_string("haar"), std::invalid_argument);
}

TEST_CASE("decomposition round trips exactly") {
  for (auto fam : {WaveletFamily::db4, WaveletFamily::db8}) {
    WaveletSpec spec;
    spec.family = fam;
    const auto sig = random_signal(256, 11);
    const auto pyr = dwt_decompose(sig, spec);
    CHECK(pyr.details.size() == 6);
    CHECK(pyr.details[0].size() == 128);
    CHECK(pyr.details[5].size() == 4);
    CHECK(pyr.approx.size() == 4);

    const auto back = dwt_reconstruct(pyr, spec);
    REQUIRE(back.size() == sig.size());
    double err = 0;
    for (std::size_t k = 0; k < sig.size(); ++k) err = std::max(err, std::abs(back[k] - sig[k]));
    CHECK(err < 1e-8);

    // orthonormal transform preserves energy
    double es = 0, ec = 0;
    for (double v : sig) es += v * v;
    for (const auto& d : pyr.details)
      for (double v : d) ec += v * v;
    for (double v : pyr.approx) ec += v * v;
    CHECK(ec == doctest::Approx(es).epsilon(1e-10));
  }
}

TEST_CASE("constant signals have vanishing detail coefficients") {
  WaveletSpec spec;
  for (auto fam : {WaveletFamily::db4, WaveletFamily::db8}) {
    spec.family = fam;
    const std::vector<double> sig(128, 3.7);
    const auto pyr = dwt_decompose(sig, spec);
    for (const auto& d : pyr.details)
      for (double v : d) CHECK(std::abs(v) < 1e-10);
    // all the mass lands in the approximation
    for (double v : pyr.approx) CHECK(v == doctest::Approx(3.7 * std::pow(std::sqrt(2.0), 6)).epsilon(1e-9));
  }
}

TEST_CASE("odd lengths and input validation") {
  WaveletSpec spec;
  const auto odd = random_signal(301, 4);
  const auto pyr = dwt_decompose(odd, spec);
  for (const auto& d : pyr.details)
    for (double v : d) CHECK(std::isfinite(v));

  CHECK_THROWS_AS(dwt_decompose(random_signal(32, 1), spec), std::invalid_argument);
  auto bad = random_signal(128, 2);
  bad[5] = std::nan("");
  CHECK_THROWS_AS(dwt_decompose(bad, spec), std::invalid_argument);
  WaveletSpec zero;
  zero.levels = 0;
  CHECK_THROWS_AS(dwt_decompose(random_signal(128, 3), zero), std::invalid_argument);
}

TEST_CASE("stat features on a hand-checked vector") {
  const std::vector<double> v = {1, 2, 3, 4};
  const auto s = stat_features(v);
  const auto& names = stat_names();
  REQUIRE(names.size() == 20);

  auto at = [&](const std::string& n) {
    for (int k = 0; k < kStatCount; ++k)
      if (names[static_cast<std::size_t>(k)] == n) return s[static_cast<std::size_t>(k)];
    FAIL("missing stat ", n);
    return 0.0;
  };

  CHECK(at("mean") == doctest::Approx(2.5));
  CHECK(at("median") == doctest::Approx(2.5));
  CHECK(at("max") == doctest::Approx(4.0));
  CHECK(at("min") == doctest::Approx(1.0));
  CHECK(at("range") == doctest::Approx(3.0));
  CHECK(at("variance") == doctest::Approx(1.25));
  CHECK(at("std") == doctest::Approx(std::sqrt(1.25)));
  CHECK(at("mu3") == doctest::Approx(0.0));
  CHECK(at("mu4") == doctest::Approx(2.5625));
  CHECK(at("cv") == doctest::Approx(std::sqrt(1.25) / 2.5));
  CHECK(at("kurtosis") == doctest::Approx(2.5625 / (1.25 * 1.25)));
  CHECK(at("skewness") == doctest::Approx(0.0));
  CHECK(at("hmean") == doctest::Approx(4.0 / (1.0 + 0.5 + 1.0 / 3 + 0.25)));
  CHECK(at("iqr") == doctest::Approx(1.5));  // (n-1)p interpolation
  CHECK(at("shannon_ent") == doctest::Approx(std::log(4.0)));  // 4 singleton bins
  CHECK(at("logenergy_ent") == doctest::Approx(std::log(1.0) + std::log(4.0) + std::log(9.0) + std::log(16.0)));
  CHECK(at("nt_half") == doctest::Approx(2.0));     // strictly above 2
  CHECK(at("nt_third") == doctest::Approx(3.0));    // strictly above 4/3
  CHECK(at("nt_quarter") == doctest::Approx(3.0));  // strictly above 1
  // mode = center of the first 32-bin cell
  CHECK(at("mode") == doctest::Approx(1.0 + 0.5 * 3.0 / 32.0));
}

TEST_CASE("stat features degenerate cases") {
  const auto s = stat_features({2.0, 2.0, 2.0});
  const auto& names = stat_names();
  for (int k = 0; k < kStatCount; ++k) {
    const auto& n = names[static_cast<std::size_t>(k)];
    if (n == "mean" || n == "mode" || n == "median" || n == "max" || n == "min")
      CHECK(s[static_cast<std::size_t>(k)] == doctest::Approx(2.0));
    if (n == "range" || n == "variance" || n == "std" || n == "skewness" ||
        n == "kurtosis" || n == "cv" || n == "shannon_ent" || n == "iqr")
      CHECK(s[static_cast<std::size_t>(k)] == doctest::Approx(0.0));
  }
  CHECK_THROWS_AS(stat_features({1.0}), std::invalid_argument);
  // zeros don't blow up the harmonic mean or log energy
  const auto z = stat_features({0.0, 0.0, 1.0});
  for (double v : z) CHECK(std::isfinite(v));
}

TEST_CASE("r-peak detection on an impulse train") {
  const double fs = 250.0;
  const int period = 250;  // 60 bpm
  const auto ecg = synthetic_ecg(2500, period, 21);
  const auto peaks = detect_rpeaks(ecg, fs);

  CHECK(peaks.size() >= 8);
  CHECK(peaks.size() <= 11);
  for (int p : peaks) {
    const int phase = p % period;
    const int off = std::min(phase, period - phase);
    CHECK(off <= 3);  // lands on (or next to) a planted beat
  }
  for (std::size_t k = 1; k < peaks.size(); ++k)
    CHECK(peaks[k] - peaks[k - 1] > static_cast<int>(0.2 * fs));  // refractory

  // flat input: nothing crosses the threshold
  CHECK(detect_rpeaks(std::vector<double>(1000, 1.0), fs).empty());

  CHECK_THROWS_AS(detect_rpeaks(ecg, 50.0), std::invalid_argument);
  CHECK_THROWS_AS(detect_rpeaks(std::vector<double>(100, 0.0), fs), std::invalid_argument);
}

TEST_CASE("hrv signal") {
  const auto hrv = hrv_signal({0, 250, 500, 875}, 250.0);
  REQUIRE(hrv.size() == 3);
  CHECK(hrv[0] == doctest::Approx(1.0));
  CHECK(hrv[1] == doctest::Approx(1.0));
  CHECK(hrv[2] == doctest::Approx(250.0 / 375.0));

  CHECK_THROWS_AS(hrv_signal({0, 250}, 250.0), std::invalid_argument);
  CHECK_THROWS_AS(hrv_signal({0, 250, 250}, 250.0), std::invalid_argument);
}

TEST_CASE("record io round trip") {
  Record rec;
  rec.ecg = random_signal(300, 1);
  rec.abp = random_signal(300, 2);
  rec.pleth = random_signal(300, 3);
  rec.fs = 250.0;
  rec.label = 1;
  rec.id = "a0042";

  const auto path = (std::filesystem::temp_directory_path() / "shapfs_rec.csv").string();
  write_record(path, rec);
  const auto back = read_record(path);
  CHECK(back.fs == rec.fs);
  CHECK(back.label == 1);
  CHECK(back.id == "a0042");
  REQUIRE(back.ecg.size() == rec.ecg.size());
  for (std::size_t k = 0; k < rec.ecg.size(); ++k) {
    CHECK(back.ecg[k] == rec.ecg[k]);
    CHECK(back.abp[k] == rec.abp[k]);
    CHECK(back.pleth[k] == rec.pleth[k]);
  }
  std::filesystem::remove(path);

  SUBCASE("id falls back to the file stem") {
    const auto p2 = (std::filesystem::temp_directory_path() / "b1234.csv").string();
    std::ofstream out(p2);
    out << "# fs=250 label=0\nECG_II,ABP,PLETH\n1,2,3\n4,5,6\n";
    out.close();
    CHECK(read_record(p2).id == "b1234");
    std::filesystem::remove(p2);
  }

  SUBCASE("malformed files rejected") {
    const auto p3 = (std::filesystem::temp_directory_path() / "shapfs_bad.csv").string();
    auto write_body = [&](const std::string& body) {
      std::ofstream out(p3);
      out << body;
    };
    write_body("ECG_II,ABP,PLETH\n1,2,3\n");  // no sidecar
    CHECK_THROWS_AS(read_record(p3), std::runtime_error);
    write_body("# fs=250\nECG_II,ABP,PLETH\n1,2,3\n");  // no label
    CHECK_THROWS_AS(read_record(p3), std::runtime_error);
    write_body("# fs=250 label=0\nECG,ABP\n1,2\n");  // wrong header
    CHECK_THROWS_AS(read_record(p3), std::runtime_error);
    write_body("# fs=250 label=0\nECG_II,ABP,PLETH\n1,2\n");  // short row
    CHECK_THROWS_AS(read_record(p3), std::runtime_error);
    std::filesystem::remove(p3);
  }
}

TEST_CASE("full 380-feature extraction") {
  Record rec;
  const std::size_t n = 2048;
  rec.ecg = synthetic_ecg(n, 200, 5);  // 75 bpm at fs = 250
  rec.abp = random_signal(n, 6);
  rec.pleth = random_signal(n, 7);
  for (std::size_t k = 0; k < n; ++k) {
    rec.abp[k] += 80.0 + 20.0 * std::sin(2 * 3.141592653589793 * static_cast<double>(k) / 200.0);
    rec.pleth[k] += std::sin(2 * 3.141592653589793 * static_cast<double>(k) / 200.0);
  }
  rec.fs = 250.0;

  const auto fv = extract_all(rec);
  CHECK(fv.values.size() == 380);
  CHECK(fv.names.size() == 380);
  CHECK(fv.tags.size() == 380);
  CHECK(!fv.hrv_fallback);
  for (double v : fv.values) CHECK(std::isfinite(v));

  CHECK(fv.names[0] == "ECG_D1_mean");
  CHECK(fv.names[19] == "ECG_D1_nt_quarter");
  CHECK(fv.names[120] == "ABP_D1_mean");
  CHECK(fv.names[240] == "PLETH_D1_mean");
  CHECK(fv.names[360] == "HRV_mean");

  std::size_t ecg_w = 0, abp_w = 0, pleth_w = 0, hrv = 0;
  for (const auto& t : fv.tags) {
    if (t == "ECG-wavelet") ++ecg_w;
    else if (t == "ABP-wavelet") ++abp_w;
    else if (t == "PLETH-wavelet") ++pleth_w;
    else if (t == "ECG-HRV") ++hrv;
  }
  CHECK(ecg_w == 120);
  CHECK(abp_w == 120);
  CHECK(pleth_w == 120);
  CHECK(hrv == 20);

  // the HRV mean sits in the physiological band around the planted 1.25 Hz
  // beat rate (the noisy synthetic admits a few secondary detections)
  CHECK(fv.values[360] > 1.0);
  CHECK(fv.values[360] < 2.5);

  SUBCASE("flat ecg triggers the hrv fallback") {
    Record flat = rec;
    std::fill(flat.ecg.begin(), flat.ecg.end(), 0.5);
    const auto f2 = extract_all(flat);
    CHECK(f2.hrv_fallback);
    for (std::size_t k = 360; k < 380; ++k) CHECK(f2.values[k] == 0.0);
  }

  SUBCASE("mismatched channels rejected") {
    Record bad = rec;
    bad.abp.pop_back();
    CHECK_THROWS_AS(extract_all(bad), std::invalid_argument);
  }
}

#include "shapfs/wavelet.hpp"

#include <cmath>
#include <stdexcept>

namespace shapfs {

namespace {

// Daubechies scaling coefficients (4 and 8 vanishing moments), canonical
// order h0..h_{2p-1}.
const std::vector<double> kDb4 = {
    2.3037781330889650086e-01,  7.1484657055291564709e-01,
    6.3088076792985890788e-01,  -2.7983769416859854211e-02,
    -1.8703481171909308408e-01, 3.0841381835560763627e-02,
    3.2883011666885199735e-02,  -1.0597401785069032105e-02,
};

const std::vector<double> kDb8 = {
    5.4415842243104009955e-02,  3.1287159091429997066e-01,
    6.7563073629728980681e-01,  5.8535468365420671277e-01,
    -1.5829105256349305667e-02, -2.8401554296154692652e-01,
    4.7248457391328277036e-04,  1.2874742662047845886e-01,
    -1.7369301001807546170e-02, -4.4088253930794751507e-02,
    1.3981027917398281649e-02,  8.7460940474057767164e-03,
    -4.8703529934515743104e-03, -3.9174037337694704630e-04,
    6.7544940645056936637e-04,  -1.1747678412476953373e-04,
};

std::vector<double> highpass_from(const std::vector<double>& h) {
  std::vector<double> g(h.size());
  for (std::size_t m = 0; m < h.size(); ++m)
    g[m] = (m % 2 == 0 ? 1.0 : -1.0) * h[h.size() - 1 - m];
  return g;
}

}  // namespace

WaveletFamily wavelet_from_string(const std::string& s) {
  if (s == "db4") return WaveletFamily::db4;
  if (s == "db8") return WaveletFamily::db8;
  throw std::invalid_argument("unknown wavelet family: " + s);
}

const std::vector<double>& scaling_filter(WaveletFamily f) {
  return f == WaveletFamily::db4 ? kDb4 : kDb8;
}

DwtPyramid dwt_decompose(const std::vector<double>& signal, const WaveletSpec& spec) {
  if (spec.levels < 1) throw std::invalid_argument("dwt_decompose: levels must be >= 1");
  if (signal.size() < (std::size_t{1} << spec.levels))
    throw std::invalid_argument("dwt_decompose: signal shorter than 2^levels");
  for (double v : signal)
    if (!std::isfinite(v)) throw std::invalid_argument("dwt_decompose: non-finite sample");

  const auto& h = scaling_filter(spec.family);
  const auto g = highpass_from(h);

  DwtPyramid pyr;
  std::vector<double> cur = signal;
  for (int lvl = 0; lvl < spec.levels; ++lvl) {
    if (cur.size() % 2 != 0) cur.push_back(cur.back());
    const std::size_t n = cur.size();
    const std::size_t half = n / 2;
    std::vector<double> a(half, 0.0), d(half, 0.0);
    for (std::size_t k = 0; k < half; ++k) {
      double sa = 0, sd = 0;
      for (std::size_t m = 0; m < h.size(); ++m) {
        const double x = cur[(2 * k + m) % n];
        sa += h[m] * x;
        sd += g[m] * x;
      }
      a[k] = sa;
      d[k] = sd;
    }
    pyr.details.push_back(std::move(d));
    cur = std::move(a);
  }
  pyr.approx = std::move(cur);
  return pyr;
}

std::vector<double> dwt_reconstruct(const DwtPyramid& pyr, const WaveletSpec& spec) {
  const auto& h = scaling_filter(spec.family);
  const auto g = highpass_from(h);

  std::vector<double> a = pyr.approx;
  for (int lvl = spec.levels - 1; lvl >= 0; --lvl) {
    const auto& d = pyr.details[static_cast<std::size_t>(lvl)];
    if (a.size() != d.size())
      throw std::invalid_argument("dwt_reconstruct: pyramid level size mismatch");
    const std::size_t n = 2 * a.size();
    std::vector<double> s(n, 0.0);
    for (std::size_t k = 0; k < a.size(); ++k)
      for (std::size_t m = 0; m < h.size(); ++m) {
        const std::size_t idx = (2 * k + m) % n;
        s[idx] += h[m] * a[k] + g[m] * d[k];
      }
    a = std::move(s);
  }
  return a;
}

}  // namespace shapfs

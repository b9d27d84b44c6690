#pragma once

#include <string>
#include <vector>

namespace shapfs {

enum class WaveletFamily { db4, db8 };

WaveletFamily wavelet_from_string(const std::string& s);

/// Orthonormal Daubechies analysis/synthesis filters. Scaling filter
/// satisfies sum h = sqrt(2), sum h^2 = 1.
const std::vector<double>& scaling_filter(WaveletFamily f);

struct WaveletSpec {
  WaveletFamily family = WaveletFamily::db4;
  int levels = 6;
  // boundary handling is periodic extension
};

struct DwtPyramid {
  std::vector<std::vector<double>> details;  // D1 (finest) .. D_levels
  std::vector<double> approx;                // A_levels
};

/// Periodized pyramid decomposition. Odd-length stages are extended by
/// repeating the last sample. Requires length >= 2^levels and finite input.
DwtPyramid dwt_decompose(const std::vector<double>& signal, const WaveletSpec& spec);

/// Inverse of dwt_decompose for even stage lengths; reconstruction is
/// exact to roundoff. Used to validate the forward transform.
std::vector<double> dwt_reconstruct(const DwtPyramid& pyr, const WaveletSpec& spec);

}  // namespace shapfs

#pragma once

#include <span>
#include <stdexcept>
#include <vector>

namespace shapfs {

/// Dense row-major real matrix.
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> v;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), v(static_cast<std::size_t>(r) * static_cast<std::size_t>(c), 0.0) {}

  double& at(int r, int c) { return v[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(c)]; }
  double at(int r, int c) const { return v[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(c)]; }

  std::span<const double> row(int r) const {
    return {v.data() + static_cast<std::size_t>(r) * static_cast<std::size_t>(cols), static_cast<std::size_t>(cols)};
  }

  /// Copy of the listed columns, in the given order.
  Matrix select_columns(const std::vector<int>& idx) const {
    Matrix out(rows, static_cast<int>(idx.size()));
    for (int r = 0; r < rows; ++r)
      for (std::size_t j = 0; j < idx.size(); ++j) {
        const int c = idx[j];
        if (c < 0 || c >= cols) throw std::out_of_range("Matrix::select_columns: bad column");
        out.at(r, static_cast<int>(j)) = at(r, c);
      }
    return out;
  }

  Matrix select_rows(const std::vector<int>& idx) const {
    Matrix out(static_cast<int>(idx.size()), cols);
    for (std::size_t j = 0; j < idx.size(); ++j)
      for (int c = 0; c < cols; ++c) out.at(static_cast<int>(j), c) = at(idx[j], c);
    return out;
  }
};

}  // namespace shapfs

#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "elemental/errors.hpp"

namespace elemental {

/// Dense n x n matrix addressed 1-based as (i, j). Only the strict upper
/// triangle j > i carries data; the rest stays zero. Dense storage keeps the
/// (I, J) addressing trivial and n stays in the thousands at most.
class UpperTriangular {
public:
  UpperTriangular() = default;
  explicit UpperTriangular(std::size_t n) : n_(n), data_(n * n, 0.0) {}

  std::size_t n() const noexcept { return n_; }

  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[(i - 1) * n_ + (j - 1)]; }
  double& operator()(std::size_t i, std::size_t j) noexcept { return data_[(i - 1) * n_ + (j - 1)]; }

  /// Bounds-checked write restricted to j >= i + min_offset.
  void set(std::size_t i, std::size_t j, double w, std::size_t min_offset = 1) {
    if (i < 1 || j > n_ || j < i + min_offset) {
      throw IndexError("entry (" + std::to_string(i) + ", " + std::to_string(j) +
                       ") outside the allowed triangle of an n = " + std::to_string(n_) + " matrix");
    }
    (*this)(i, j) = w;
  }

  double sum() const noexcept {
    double s = 0.0;
    for (double v : data_) s += v;
    return s;
  }

  double abs_sum() const noexcept {
    double s = 0.0;
    for (double v : data_) s += v < 0 ? -v : v;
    return s;
  }

  double max_abs() const noexcept {
    double m = 0.0;
    for (double v : data_) m = std::max(m, v < 0 ? -v : v);
    return m;
  }

  UpperTriangular& operator+=(const UpperTriangular& o) {
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }

  UpperTriangular& operator*=(double s) {
    for (double& v : data_) v *= s;
    return *this;
  }

  friend UpperTriangular operator+(UpperTriangular a, const UpperTriangular& b) { return a += b; }
  friend UpperTriangular operator*(double s, UpperTriangular a) { return a *= s; }

  bool operator==(const UpperTriangular&) const = default;

  /// Largest |a - b| over all entries; infinite when the sizes differ.
  friend double max_abs_diff(const UpperTriangular& a, const UpperTriangular& b) {
    if (a.n_ != b.n_) return std::numeric_limits<double>::infinity();
    double m = 0.0;
    for (std::size_t k = 0; k < a.data_.size(); ++k) {
      const double d = a.data_[k] - b.data_[k];
      m = std::max(m, d < 0 ? -d : d);
    }
    return m;
  }

  /// True when nothing is stored on or below the (offset - 1)-th superdiagonal.
  bool confined_to(std::size_t min_offset) const noexcept {
    for (std::size_t i = 1; i <= n_; ++i) {
      for (std::size_t j = 1; j <= n_ && j < i + min_offset; ++j) {
        if ((*this)(i, j) != 0.0) return false;
      }
    }
    return true;
  }

private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

}  // namespace elemental

#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "elemental/errors.hpp"

namespace elemental {

/// Sample sorted into decreasing order, X_1 = maximum. All public indexing is
/// 1-based to match the (I, J) vocabulary of the estimators.
class OrderedSample {
public:
  OrderedSample() = default;

  /// Sorts `values` into decreasing order.
  static OrderedSample from_unsorted(std::vector<double> values) {
    std::sort(values.begin(), values.end(), std::greater<>());
    return OrderedSample(std::move(values));
  }

  /// Takes values that are already in decreasing order; throws otherwise.
  static OrderedSample from_decreasing(std::vector<double> values) {
    for (std::size_t k = 1; k < values.size(); ++k) {
      if (!(values[k - 1] >= values[k])) {
        throw PreconditionError("sample is not in decreasing order at position " +
                                std::to_string(k + 1));
      }
    }
    return OrderedSample(std::move(values));
  }

  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }

  /// X_i, 1-based.
  double operator[](std::size_t i) const noexcept { return values_[i - 1]; }

  double at(std::size_t i) const {
    if (i < 1 || i > values_.size()) {
      throw IndexError("order statistic X_" + std::to_string(i) + " requested from a sample of size " +
                       std::to_string(values_.size()));
    }
    return values_[i - 1];
  }

  std::span<const double> values() const noexcept { return values_; }

  /// True when no two entries are equal.
  bool strictly_decreasing() const noexcept { return strict_; }

  /// First tied pair (i, i+1), 1-based; {0, 0} when there is none.
  std::pair<std::size_t, std::size_t> first_tie() const noexcept {
    for (std::size_t k = 1; k < values_.size(); ++k) {
      if (values_[k - 1] == values_[k]) return {k, k + 1};
    }
    return {0, 0};
  }

  OrderedSample shifted(double c) const {
    std::vector<double> v(values_);
    for (double& x : v) x += c;
    return OrderedSample(std::move(v));
  }

  /// Requires lambda > 0 so the order is preserved.
  OrderedSample scaled(double lambda) const {
    if (!(lambda > 0.0)) throw PreconditionError("scale factor must be positive");
    std::vector<double> v(values_);
    for (double& x : v) x *= lambda;
    return OrderedSample(std::move(v));
  }

private:
  explicit OrderedSample(std::vector<double> values) : values_(std::move(values)) {
    strict_ = first_tie().first == 0;
  }

  std::vector<double> values_;
  bool strict_ = true;
};

}  // namespace elemental

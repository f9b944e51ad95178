#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <type_traits>
#include <variant>

#include "elemental/errors.hpp"
#include "elemental/ordered_sample.hpp"

namespace elemental {

// Classical comparators. Both take the number k of upper order statistics
// they use; the defaults below are floor(n/4) for each.

inline std::size_t default_pickands_k(std::size_t n) { return n / 4; }
inline std::size_t default_hill_k(std::size_t n) { return n / 4; }

/// Pickands: log2((X_k - X_2k) / (X_2k - X_4k)).
inline double pickands(const OrderedSample& s, std::size_t k) {
  if (k < 1 || 4 * k > s.size()) {
    throw IndexError("Pickands needs 1 <= k and 4k <= n (k = " + std::to_string(k) +
                     ", n = " + std::to_string(s.size()) + ")");
  }
  const double upper = s[k] - s[2 * k];
  const double lower = s[2 * k] - s[4 * k];
  if (!(upper > 0.0)) throw TieError(k, 2 * k);
  if (!(lower > 0.0)) throw TieError(2 * k, 4 * k);
  return (std::log(upper) - std::log(lower)) / std::numbers::ln2;
}

/// Hill: (1/k) sum_{i<=k} log(X_i / X_{k+1}). Scale but not location invariant.
inline double hill(const OrderedSample& s, std::size_t k) {
  if (k < 1 || k + 1 > s.size()) {
    throw IndexError("Hill needs 1 <= k and k + 1 <= n (k = " + std::to_string(k) +
                     ", n = " + std::to_string(s.size()) + ")");
  }
  const double base = s[k + 1];
  if (!(base > 0.0)) throw DomainError("Hill needs X_{k+1} > 0, got " + std::to_string(base));
  const double log_base = std::log(base);
  double total = 0.0;
  for (std::size_t i = 1; i <= k; ++i) total += std::log(s[i]) - log_base;
  return total / static_cast<double>(k);
}

struct Pickands {
  std::size_t k;
};
struct Hill {
  std::size_t k;
};
using BaselineChoice = std::variant<Pickands, Hill>;

inline double evaluate(const OrderedSample& s, const BaselineChoice& choice) {
  return std::visit(
      [&](const auto& c) -> double {
        if constexpr (std::is_same_v<std::decay_t<decltype(c)>, Pickands>) return pickands(s, c.k);
        else return hill(s, c.k);
      },
      choice);
}

}  // namespace elemental

#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "elemental/errors.hpp"
#include "elemental/triangular.hpp"

namespace elemental {

/// Sum tolerance for the unit-sum / zero-sum invariants, relative to the
/// absolute mass of the matrix (floored at 1).
inline constexpr double kSumTolerance = 1e-12;

/// Identifies the elemental estimator built on X_I and X_J, J >= I + 2.
struct ElementalIndex {
  std::size_t i = 1;
  std::size_t j = 3;

  auto operator<=>(const ElementalIndex&) const = default;

  /// Throws IndexError unless 1 <= i, i + 2 <= j <= n.
  void validate(std::size_t n) const {
    if (i < 1 || j < i + 2 || j > n) {
      throw IndexError("elemental index (" + std::to_string(i) + ", " + std::to_string(j) +
                       ") invalid for sample size " + std::to_string(n));
    }
  }
};

inline std::size_t elemental_count(std::size_t n) { return n < 3 ? 0 : (n - 1) * (n - 2) / 2; }
inline std::size_t spacing_count(std::size_t n) { return n < 2 ? 0 : n * (n - 1) / 2; }

/// Every elemental index for sample size n, ordered by I then J.
inline std::vector<ElementalIndex> elemental_indices(std::size_t n) {
  std::vector<ElementalIndex> out;
  out.reserve(elemental_count(n));
  for (std::size_t i = 1; i + 2 <= n; ++i) {
    for (std::size_t j = i + 2; j <= n; ++j) out.push_back({i, j});
  }
  return out;
}

/// Matrix R of elemental weights r_IJ, J >= I + 2. Constructed weights are
/// unit-sum unless built through `unconstrained`.
class ElementalWeights {
public:
  /// Adopts `r` as-is; throws unless it sums to one.
  explicit ElementalWeights(UpperTriangular r) : r_(std::move(r)) {
    check_shape();
    if (!unit_sum()) {
      throw PreconditionError("elemental weights must sum to 1 (sum = " + std::to_string(r_.sum()) + ")");
    }
  }

  /// Scales `r` to unit sum.
  static ElementalWeights normalized(UpperTriangular r) {
    const double s = r.sum();
    if (s == 0.0 || !std::isfinite(s)) throw PreconditionError("cannot normalise elemental weights with sum " + std::to_string(s));
    r *= 1.0 / s;
    return ElementalWeights(std::move(r));
  }

  /// No sum requirement; for linear-algebra work (differences, scalings).
  static ElementalWeights unconstrained(UpperTriangular r) {
    ElementalWeights w;
    w.r_ = std::move(r);
    w.check_shape();
    return w;
  }

  static ElementalWeights single(std::size_t n, ElementalIndex e) {
    e.validate(n);
    UpperTriangular r(n);
    r(e.i, e.j) = 1.0;
    return ElementalWeights(std::move(r));
  }

  std::size_t n() const noexcept { return r_.n(); }
  double operator()(std::size_t i, std::size_t j) const noexcept { return r_(i, j); }
  const UpperTriangular& matrix() const noexcept { return r_; }
  double sum() const noexcept { return r_.sum(); }

  bool unit_sum() const noexcept {
    return std::abs(r_.sum() - 1.0) <= kSumTolerance * std::max(1.0, r_.abs_sum());
  }

  /// Weights as a vector in elemental_indices(n) order.
  std::vector<double> flattened() const {
    std::vector<double> out;
    out.reserve(elemental_count(n()));
    for (const auto& e : elemental_indices(n())) out.push_back(r_(e.i, e.j));
    return out;
  }

private:
  ElementalWeights() = default;

  void check_shape() const {
    if (r_.n() < 3) throw PreconditionError("elemental weights need n >= 3");
    if (!r_.confined_to(2)) throw PreconditionError("elemental weights must vanish for J < I + 2");
  }

  UpperTriangular r_;
};

/// Matrix A of log-spacing weights a_ij, j >= i + 1. Constructed weights are
/// zero-sum (scale invariance) unless built through `unconstrained`.
class SpacingWeights {
public:
  explicit SpacingWeights(UpperTriangular a) : a_(std::move(a)) {
    check_shape();
    if (!zero_sum()) {
      throw PreconditionError("spacing weights must sum to 0 (sum = " + std::to_string(a_.sum()) + ")");
    }
  }

  static SpacingWeights unconstrained(UpperTriangular a) {
    SpacingWeights w;
    w.a_ = std::move(a);
    w.check_shape();
    return w;
  }

  std::size_t n() const noexcept { return a_.n(); }
  double operator()(std::size_t i, std::size_t j) const noexcept { return a_(i, j); }
  const UpperTriangular& matrix() const noexcept { return a_; }
  double sum() const noexcept { return a_.sum(); }

  bool zero_sum() const noexcept {
    return std::abs(a_.sum()) <= kSumTolerance * std::max(1.0, a_.abs_sum());
  }

  /// Row-major over the strict upper triangle: (1,2), (1,3), ..., (n-1,n).
  std::vector<double> flattened() const {
    std::vector<double> out;
    out.reserve(spacing_count(n()));
    for (std::size_t i = 1; i < n(); ++i) {
      for (std::size_t j = i + 1; j <= n(); ++j) out.push_back(a_(i, j));
    }
    return out;
  }

private:
  SpacingWeights() = default;

  void check_shape() const {
    if (a_.n() < 2) throw PreconditionError("spacing weights need n >= 2");
    if (!a_.confined_to(1)) throw PreconditionError("spacing weights must vanish on and below the diagonal");
  }

  UpperTriangular a_;
};

/// Spread each r_IJ over its three log-spacings: r (J-1) on (I, J-1),
/// -r (J-1-I) on (I, J), -r I on (I+1, J).
inline SpacingWeights expand(const ElementalWeights& r) {
  const std::size_t n = r.n();
  UpperTriangular a(n);
  for (std::size_t i = 1; i + 2 <= n; ++i) {
    for (std::size_t j = i + 2; j <= n; ++j) {
      const double w = r(i, j);
      if (w == 0.0) continue;
      a(i, j - 1) += w * static_cast<double>(j - 1);
      a(i, j) -= w * static_cast<double>(j - 1 - i);
      a(i + 1, j) -= w * static_cast<double>(i);
    }
  }
  return SpacingWeights::unconstrained(std::move(a));
}

/// r_IJ proportional to n + 1 - J.
inline ElementalWeights linearly_rising(std::size_t n) {
  if (n < 3) throw PreconditionError("linearly-rising weights need n >= 3");
  // sum over J of (J - 2)(n + 1 - J), computed exactly in integers
  std::size_t z = 0;
  for (std::size_t j = 3; j <= n; ++j) z += (j - 2) * (n + 1 - j);
  const double norm = static_cast<double>(z);
  UpperTriangular r(n);
  for (std::size_t i = 1; i + 2 <= n; ++i) {
    for (std::size_t j = i + 2; j <= n; ++j) r(i, j) = static_cast<double>(n + 1 - j) / norm;
  }
  return ElementalWeights(std::move(r));
}

/// a_IJ = 6 (2n - 3J + 2) / (n (n-1) (n-2)) for J >= I + 1.
inline SpacingWeights linearly_rising_spacing_closed_form(std::size_t n) {
  if (n < 3) throw PreconditionError("linearly-rising weights need n >= 3");
  const double denom = static_cast<double>(n * (n - 1) * (n - 2));
  UpperTriangular a(n);
  for (std::size_t j = 2; j <= n; ++j) {
    const double col = 6.0 * (2.0 * static_cast<double>(n) - 3.0 * static_cast<double>(j) + 2.0) / denom;
    for (std::size_t i = 1; i < j; ++i) a(i, j) = col;
  }
  return SpacingWeights(std::move(a));
}

enum class SchemeName {
  EqualWeight,     // A1: r constant
  TopRow,          // B1: r proportional to 1 / (I (I + 1))
  QuadraticGap,    // C1: r proportional to (J - I)^2
  LinearlyRising,  // r proportional to n + 1 - J
  Custom,
};

inline std::string_view to_string(SchemeName s) {
  switch (s) {
    case SchemeName::EqualWeight: return "equal-weight";
    case SchemeName::TopRow: return "top-row";
    case SchemeName::QuadraticGap: return "quadratic-gap";
    case SchemeName::LinearlyRising: return "linearly-rising";
    case SchemeName::Custom: return "custom";
  }
  return "custom";
}

/// Accepts the long names above and the short labels A1, B1, C1.
inline std::optional<SchemeName> parse_scheme(std::string_view s) {
  if (s == "equal-weight" || s == "A1") return SchemeName::EqualWeight;
  if (s == "top-row" || s == "B1") return SchemeName::TopRow;
  if (s == "quadratic-gap" || s == "C1") return SchemeName::QuadraticGap;
  if (s == "linearly-rising") return SchemeName::LinearlyRising;
  if (s == "custom") return SchemeName::Custom;
  return std::nullopt;
}

inline constexpr SchemeName kNamedSchemes[] = {SchemeName::EqualWeight, SchemeName::TopRow,
                                               SchemeName::QuadraticGap, SchemeName::LinearlyRising};

inline ElementalWeights named_scheme(SchemeName name, std::size_t n) {
  if (n < 3) throw PreconditionError("elemental schemes need n >= 3");
  if (name == SchemeName::LinearlyRising) return linearly_rising(n);
  if (name == SchemeName::Custom) throw PreconditionError("the custom scheme needs an explicit weight matrix");
  UpperTriangular r(n);
  for (std::size_t i = 1; i + 2 <= n; ++i) {
    for (std::size_t j = i + 2; j <= n; ++j) {
      const double di = static_cast<double>(i);
      const double gap = static_cast<double>(j - i);
      switch (name) {
        case SchemeName::EqualWeight: r(i, j) = 1.0; break;
        case SchemeName::TopRow: r(i, j) = 1.0 / (di * (di + 1.0)); break;
        case SchemeName::QuadraticGap: r(i, j) = gap * gap; break;
        default: break;
      }
    }
  }
  return ElementalWeights::normalized(std::move(r));
}

}  // namespace elemental

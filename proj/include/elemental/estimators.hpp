#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <vector>

#include "elemental/errors.hpp"
#include "elemental/ordered_sample.hpp"
#include "elemental/triangular.hpp"
#include "elemental/weights.hpp"

namespace elemental {

/// m(i, j) = log(X_i - X_j) for j > i; zero elsewhere.
class LogSpacingMatrix {
public:
  explicit LogSpacingMatrix(const OrderedSample& s) : m_(s.size()) {
    const std::size_t n = s.size();
    for (std::size_t i = 1; i < n; ++i) {
      for (std::size_t j = i + 1; j <= n; ++j) {
        const double gap = s[i] - s[j];
        if (!(gap > 0.0)) throw TieError(i, j);
        m_(i, j) = std::log(gap);
      }
    }
  }

  std::size_t n() const noexcept { return m_.n(); }
  double operator()(std::size_t i, std::size_t j) const noexcept { return m_(i, j); }
  const UpperTriangular& matrix() const noexcept { return m_; }

private:
  UpperTriangular m_;
};

inline LogSpacingMatrix log_spacing_matrix(const OrderedSample& s) { return LogSpacingMatrix(s); }

namespace detail {

inline double log_gap(const OrderedSample& s, std::size_t i, std::size_t j) {
  const double gap = s[i] - s[j];
  if (!(gap > 0.0)) throw TieError(i, j);
  return std::log(gap);
}

}  // namespace detail

/// Elemental estimate log(tau^(J-1) / t^I), evaluated in the three-weight form
/// (J-1) log(X_I - X_{J-1}) - (J-1-I) log(X_I - X_J) - I log(X_{I+1} - X_J),
/// which never forms the ratios tau and t.
inline double elemental_estimate(const OrderedSample& s, ElementalIndex e) {
  e.validate(s.size());
  const auto I = static_cast<double>(e.i);
  const auto J = static_cast<double>(e.j);
  return (J - 1.0) * detail::log_gap(s, e.i, e.j - 1) - (J - 1.0 - I) * detail::log_gap(s, e.i, e.j) -
         I * detail::log_gap(s, e.i + 1, e.j);
}

/// Same as elemental_estimate but read from a precomputed log-spacing matrix.
inline double elemental_estimate(const LogSpacingMatrix& m, ElementalIndex e) {
  e.validate(m.n());
  const auto I = static_cast<double>(e.i);
  const auto J = static_cast<double>(e.j);
  return (J - 1.0) * m(e.i, e.j - 1) - (J - 1.0 - I) * m(e.i, e.j) - I * m(e.i + 1, e.j);
}

/// All (n-1)(n-2)/2 elementals, in elemental_indices(n) order.
inline std::vector<double> elemental_vector(const LogSpacingMatrix& m) {
  std::vector<double> out;
  out.reserve(elemental_count(m.n()));
  for (const auto& e : elemental_indices(m.n())) out.push_back(elemental_estimate(m, e));
  return out;
}

inline std::map<ElementalIndex, double> all_elementals(const OrderedSample& s) {
  if (s.size() < 3) throw PreconditionError("elemental estimators need at least 3 order statistics");
  const LogSpacingMatrix m(s);
  std::map<ElementalIndex, double> out;
  for (const auto& e : elemental_indices(s.size())) out.emplace(e, elemental_estimate(m, e));
  return out;
}

/// Entrywise sum of a and the log-spacing matrix. Spacings carrying zero
/// weight are never read, so ties there are harmless.
inline double evaluate_spacing_weights(const OrderedSample& s, const SpacingWeights& a) {
  if (a.n() != s.size()) {
    throw PreconditionError("weight matrix is for n = " + std::to_string(a.n()) + " but the sample has " +
                            std::to_string(s.size()) + " points");
  }
  const std::size_t n = s.size();
  double total = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = i + 1; j <= n; ++j) {
      const double w = a(i, j);
      if (w != 0.0) total += w * detail::log_gap(s, i, j);
    }
  }
  return total;
}

/// The spacing-weight matrix of one elemental: (J-1), -(J-1-I), -I on the
/// left, upper-right and lower cells of its inverted L.
inline SpacingWeights elemental_spacing_weights(std::size_t n, ElementalIndex e) {
  return expand(ElementalWeights::single(n, e));
}

}  // namespace elemental

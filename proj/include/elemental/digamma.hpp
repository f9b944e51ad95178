#pragma once

#include <cmath>
#include <string>

#include "elemental/errors.hpp"

namespace elemental {

/// Digamma psi(x) = d/dx log Gamma(x) for x > 0.
///
/// Shifts x upward with psi(x) = psi(x + 1) - 1/x until x >= 10, then applies
/// the asymptotic expansion
///   psi(x) ~ log x - 1/(2x) - sum_k B_2k / (2k x^2k)
/// through B_20. At x = 10 the first omitted term is below 1e-19.
inline double digamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("digamma is only provided for finite x > 0, got " + std::to_string(x));
  }
  long double shift = 0.0L;
  while (x < 10.0) {
    shift -= 1.0L / x;
    x += 1.0;
  }
  // B_2k / (2k), k = 1..10
  static constexpr double kCoef[] = {
      1.0 / 12.0,          -1.0 / 120.0,     1.0 / 252.0,       -1.0 / 240.0,
      1.0 / 132.0,         -691.0 / 32760.0, 1.0 / 12.0,        -3617.0 / 8160.0,
      43867.0 / 14364.0,   -174611.0 / 6600.0,
  };
  const double inv2 = 1.0 / (x * x);
  double series = 0.0;
  for (int k = 9; k >= 0; --k) series = (series + kCoef[k]) * inv2;
  return static_cast<double>(shift + (std::log(static_cast<long double>(x)) - 0.5L / x - series));
}

}  // namespace elemental

#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "elemental/errors.hpp"
#include "elemental/ordered_sample.hpp"
#include "elemental/random.hpp"

namespace elemental {

/// Below this |xi| the exponential limit is used.
inline constexpr double kExponentialThreshold = 1e-12;

/// Location mu, scale sigma > 0 and tail (shape) xi of a Generalized Pareto
/// distribution F(x) = 1 - (1 + xi (x - mu) / sigma)^(-1/xi).
class GpdParams {
public:
  GpdParams() = default;

  GpdParams(double mu, double sigma, double xi) : mu_(mu), sigma_(sigma), xi_(xi) {
    if (!std::isfinite(mu)) throw DomainError("GPD location must be finite");
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw DomainError("GPD scale must be positive and finite");
    if (!std::isfinite(xi)) throw DomainError("GPD tail parameter must be finite");
  }

  double mu() const noexcept { return mu_; }
  double sigma() const noexcept { return sigma_; }
  double xi() const noexcept { return xi_; }

  bool exponential() const noexcept { return std::abs(xi_) < kExponentialThreshold; }

  double lower_endpoint() const noexcept { return mu_; }

  /// mu - sigma/xi for xi < 0, +inf otherwise.
  double upper_endpoint() const noexcept {
    if (xi_ < 0.0 && !exponential()) return mu_ - sigma_ / xi_;
    return std::numeric_limits<double>::infinity();
  }

private:
  double mu_ = 0.0;
  double sigma_ = 1.0;
  double xi_ = 0.0;
};

/// Exceedance probability G = 1 - F, restricted to (0, 1].
class Exceedance {
public:
  explicit Exceedance(double g) : g_(g) {
    if (!(g > 0.0 && g <= 1.0)) {
      throw DomainError("exceedance probability must lie in (0, 1], got " + std::to_string(g));
    }
  }
  double value() const noexcept { return g_; }

private:
  double g_;
};

namespace detail {

inline void check_support(const GpdParams& p, double x) {
  if (std::isnan(x)) throw DomainError("x is NaN");
  if (x < p.lower_endpoint()) {
    throw DomainError("x = " + std::to_string(x) + " is below the lower endpoint mu = " +
                      std::to_string(p.lower_endpoint()));
  }
  if (x > p.upper_endpoint()) {
    throw DomainError("x = " + std::to_string(x) + " is above the upper endpoint mu - sigma/xi = " +
                      std::to_string(p.upper_endpoint()));
  }
}

// (G^-xi - 1) / xi, written so that small |xi| does not cancel.
inline double quantile_core(double xi, double log_g) {
  return std::expm1(-xi * log_g) / xi;
}

}  // namespace detail

/// G(x) = 1 - F(x).
inline double exceedance(const GpdParams& p, double x) {
  detail::check_support(p, x);
  const double z = (x - p.mu()) / p.sigma();
  if (p.exponential()) return std::exp(-z);
  const double arg = p.xi() * z;
  if (arg <= -1.0) return 0.0;  // upper endpoint for xi < 0
  return std::exp(-std::log1p(arg) / p.xi());
}

inline double cdf(const GpdParams& p, double x) { return 1.0 - exceedance(p, x); }

inline double density(const GpdParams& p, double x) {
  detail::check_support(p, x);
  const double z = (x - p.mu()) / p.sigma();
  if (p.exponential()) return std::exp(-z) / p.sigma();
  const double arg = 1.0 + p.xi() * z;
  if (arg <= 0.0) {
    // upper endpoint, xi < 0: the density there is (1 + xi z)^(-1/xi - 1) / sigma at 0
    if (p.xi() < -1.0) return std::numeric_limits<double>::infinity();
    if (p.xi() == -1.0) return 1.0 / p.sigma();
    return 0.0;
  }
  return std::exp(-(1.0 / p.xi() + 1.0) * std::log(arg)) / p.sigma();
}

/// Inverse map x = u(G) = mu + sigma/xi (G^-xi - 1); mu - sigma log G at xi = 0.
inline double quantile(const GpdParams& p, Exceedance g) {
  const double log_g = std::log(g.value());
  if (p.exponential()) return p.mu() - p.sigma() * log_g;
  return p.mu() + p.sigma() * detail::quantile_core(p.xi(), log_g);
}

/// n i.i.d. draws by inverse transform from uniform exceedances, returned in
/// decreasing order.
template <UniformSource Source>
OrderedSample sample(const GpdParams& p, std::size_t n, Source& source) {
  if (n < 1) throw PreconditionError("sample size must be at least 1");
  std::vector<double> values(n);
  for (double& x : values) x = quantile(p, Exceedance(source.uniform_open()));
  return OrderedSample::from_unsorted(std::move(values));
}

/// Where a simulated sample puts its origin. Every estimator here is location
/// invariant, so the choice only affects floating-point resolution.
enum class SampleOrigin {
  /// x = u(G), including mu.
  Natural,
  /// x - mu for xi >= -1/2; x - (mu - sigma/xi), i.e. relative to the upper
  /// endpoint, for xi < -1/2. Near a finite upper endpoint the natural
  /// coordinates round (1 - G^gamma) to 1 and destroy the top spacings.
  Resolved,
};

/// Draw in the coordinates selected by `origin`. Same uniforms, same order as
/// sample(), so the result differs from sample() only by a location shift.
template <UniformSource Source>
OrderedSample sample_in(const GpdParams& p, std::size_t n, Source& source, SampleOrigin origin) {
  if (origin == SampleOrigin::Natural) return sample(p, n, source);
  if (n < 1) throw PreconditionError("sample size must be at least 1");
  std::vector<double> values(n);
  const double xi = p.xi();
  const bool anchored = xi < -0.5;
  for (double& x : values) {
    const double log_g = std::log(source.uniform_open());
    if (p.exponential()) {
      x = -p.sigma() * log_g;
    } else if (anchored) {
      x = (p.sigma() / xi) * std::exp(-xi * log_g);
    } else {
      x = p.sigma() * detail::quantile_core(xi, log_g);
    }
  }
  return OrderedSample::from_unsorted(std::move(values));
}

}  // namespace elemental

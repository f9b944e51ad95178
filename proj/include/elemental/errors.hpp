#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace elemental {

/// Argument outside the mathematical domain of a function (support violations,
/// exceedance probabilities outside (0, 1], digamma at non-positive x).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Two order statistics coincide, so the log-spacing between them is -inf.
/// Indices are 1-based, i < j.
class TieError : public std::runtime_error {
public:
  TieError(std::size_t i, std::size_t j)
      : std::runtime_error("tie between order statistics X_" + std::to_string(i) +
                           " and X_" + std::to_string(j)),
        i_(i), j_(j) {}

  std::size_t i() const noexcept { return i_; }
  std::size_t j() const noexcept { return j_; }

private:
  std::size_t i_;
  std::size_t j_;
};

class IndexError : public std::out_of_range {
public:
  using std::out_of_range::out_of_range;
};

/// A caller-side contract was violated (wrong matrix sums, mismatched sizes,
/// uncertified schemes, bad experiment configuration).
class PreconditionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A linear solve failed even after regularisation.
class NumericalError : public std::runtime_error {
public:
  NumericalError(const std::string& what, double condition_estimate)
      : std::runtime_error(what), condition_(condition_estimate) {}

  /// Reciprocal condition estimate of the last attempted factorisation.
  double condition_estimate() const noexcept { return condition_; }

private:
  double condition_;
};

}  // namespace elemental

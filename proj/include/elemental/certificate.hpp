#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <tuple>
#include <utility>
#include <variant>
#include <vector>

#include "elemental/digamma.hpp"
#include "elemental/errors.hpp"
#include "elemental/weights.hpp"

namespace elemental {

/// Pass/fail tolerance of the certificate.
inline constexpr double kCertificateTolerance = 1e-10;

/// b_k for k = 0..n-2.
struct ConstraintVector {
  std::size_t n = 0;
  std::vector<double> b;
  /// scale[k] = sum over (i, j) of |coefficient * a_ij|, the magnitude of the
  /// terms that cancel in b_k. Rounding in b_k is relative to this.
  std::vector<double> scale;

  double max_abs() const {
    double m = 0.0;
    for (double v : b) m = std::max(m, std::abs(v));
    return m;
  }
};

struct CertificateReport {
  bool zero_sum_ok = false;
  double psi_i_sum = 0.0;
  double psi_j_sum = 0.0;
  ConstraintVector b;
  bool passed = false;
};

namespace detail {

__extension__ using Int128 = unsigned __int128;

// Exact binomials are kept while the largest coefficient fits in 128 bits.
inline constexpr std::size_t kExactBinomialLimit = 64;

class BinomialTable {
public:
  explicit BinomialTable(std::size_t n) : n_(n + 1), c_(n_ * n_, 0) {
    for (std::size_t r = 0; r < n_; ++r) {
      c_[r * n_] = 1;
      for (std::size_t k = 1; k <= r; ++k) c_[r * n_ + k] = c_[(r - 1) * n_ + k - 1] + c_[(r - 1) * n_ + k];
    }
  }
  Int128 operator()(std::size_t r, std::size_t k) const { return k > r ? 0 : c_[r * n_ + k]; }

private:
  std::size_t n_;
  std::vector<Int128> c_;
};

// Signed weight of a_ij inside b_k:
//   (k+1) C(j-1, k+1) C(k, i-1) (-1)^(k-i-1),  i <= k+1 <= j-1.
// Only the final conversion to floating point rounds.
class ConstraintCoefficients {
public:
  explicit ConstraintCoefficients(std::size_t n) : n_(n), table_(n) {
    if (n > kExactBinomialLimit) {
      throw PreconditionError("constraint coefficients are exact only up to n = " +
                              std::to_string(kExactBinomialLimit));
    }
  }

  long double operator()(std::size_t k, std::size_t i, std::size_t j) const {
    if (i < 1 || i > k + 1 || j < k + 2 || j > n_) return 0.0L;
    const Int128 mag = static_cast<Int128>(k + 1) * table_(j - 1, k + 1) * table_(k, i - 1);
    const auto v = static_cast<long double>(mag);
    // (-1)^(k-i-1) has the parity of k + 1 - i
    return ((k + 1 - i) % 2 == 0) ? v : -v;
  }

private:
  std::size_t n_;
  BinomialTable table_;
};

inline std::vector<double> digamma_table(std::size_t n) {
  std::vector<double> psi(n + 1, 0.0);
  for (std::size_t k = 1; k <= n; ++k) psi[k] = digamma(static_cast<double>(k));
  return psi;
}

inline std::pair<double, double> raw_psi_sums(const UpperTriangular& a) {
  const std::size_t n = a.n();
  const auto psi = digamma_table(n);
  long double si = 0.0L, sj = 0.0L;
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = i + 1; j <= n; ++j) {
      const double w = a(i, j);
      si += static_cast<long double>(w) * psi[i];
      sj += static_cast<long double>(w) * psi[j];
    }
  }
  return {static_cast<double>(si), static_cast<double>(sj)};
}

}  // namespace detail

/// (sum a_ij psi(i), sum a_ij psi(j)). The expectations of sum a_ij log G_i
/// and sum a_ij log G_j reduce to these only when a sums to zero, so that is
/// required here.
inline std::pair<double, double> psi_sums(const SpacingWeights& a) {
  if (!a.zero_sum()) {
    throw PreconditionError("psi sums are only meaningful for zero-sum spacing weights (sum = " +
                            std::to_string(a.sum()) + ")");
  }
  return detail::raw_psi_sums(a.matrix());
}

/// The n-1 polynomial coefficients b_k whose vanishing is the unbiasedness
/// condition on a log-spacing estimator.
inline ConstraintVector b_constraints(const SpacingWeights& a) {
  const std::size_t n = a.n();
  const detail::ConstraintCoefficients coef(n);
  ConstraintVector out;
  out.n = n;
  out.b.assign(n - 1, 0.0);
  out.scale.assign(n - 1, 0.0);
  for (std::size_t k = 0; k + 2 <= n; ++k) {
    long double sum = 0.0L, mag = 0.0L;
    for (std::size_t j = k + 2; j <= n; ++j) {
      for (std::size_t i = 1; i <= k + 1; ++i) {
        const long double term = coef(k, i, j) * static_cast<long double>(a(i, j));
        sum += term;
        mag += term < 0 ? -term : term;
      }
    }
    out.b[k] = static_cast<double>(sum);
    out.scale[k] = static_cast<double>(mag);
  }
  return out;
}

/// Sampling-free check that `a` is an unbiased location- and scale-invariant
/// log-spacing estimator: zero sum, both psi sums equal to -1, and every b_k
/// zero. b_k is compared against the tolerance times its own cancellation
/// scale (floored at 1), since for n beyond ~15 the coefficients reach 1e8
/// and more and an absolute test would only measure rounding.
inline CertificateReport certify(const SpacingWeights& a) {
  CertificateReport r;
  r.zero_sum_ok = a.zero_sum();
  std::tie(r.psi_i_sum, r.psi_j_sum) = detail::raw_psi_sums(a.matrix());
  r.b = b_constraints(a);
  bool b_ok = true;
  for (std::size_t k = 0; k < r.b.b.size(); ++k) {
    b_ok = b_ok && std::abs(r.b.b[k]) <= kCertificateTolerance * std::max(1.0, r.b.scale[k]);
  }
  r.passed = r.zero_sum_ok && std::abs(r.psi_i_sum + 1.0) <= kCertificateTolerance &&
             std::abs(r.psi_j_sum + 1.0) <= kCertificateTolerance && b_ok;
  return r;
}

inline CertificateReport certify(const ElementalWeights& r) { return certify(expand(r)); }

namespace detail {

// Columns: expanded single elementals, flattened row-major over j > i.
inline Eigen::MatrixXd elemental_basis(std::size_t n) {
  const auto idx = elemental_indices(n);
  Eigen::MatrixXd e(spacing_count(n), idx.size());
  for (std::size_t c = 0; c < idx.size(); ++c) {
    const auto col = expand(ElementalWeights::single(n, idx[c])).flattened();
    e.col(static_cast<Eigen::Index>(c)) = Eigen::Map<const Eigen::VectorXd>(col.data(), static_cast<Eigen::Index>(col.size()));
  }
  return e;
}

// Row k holds the b_k functional, scaled to unit Euclidean norm.
inline Eigen::MatrixXd constraint_rows(std::size_t n) {
  const ConstraintCoefficients coef(n);
  Eigen::MatrixXd b(static_cast<Eigen::Index>(n - 1), static_cast<Eigen::Index>(spacing_count(n)));
  for (std::size_t k = 0; k + 2 <= n; ++k) {
    Eigen::Index col = 0;
    for (std::size_t i = 1; i < n; ++i) {
      for (std::size_t j = i + 1; j <= n; ++j) b(static_cast<Eigen::Index>(k), col++) = static_cast<double>(coef(k, i, j));
    }
    b.row(static_cast<Eigen::Index>(k)).normalize();
  }
  return b;
}

inline Eigen::Index numerical_rank(const Eigen::MatrixXd& m) {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(m);
  qr.setThreshold(1e-10);
  return qr.rank();
}

}  // namespace detail

inline constexpr std::size_t kMaxRankN = 30;

struct BasisRank {
  std::size_t elemental_rank = 0;
  std::size_t constraint_rank = 0;
  /// Every vector with zero sum and all b_k = 0 lies in the elemental span.
  bool spans_nullspace = false;
  /// Largest relative least-squares residual found while checking the above.
  double max_residual = 0.0;
  /// Rank of the b_k rows with the zero-sum row appended. Equal to
  /// constraint_rank when zero sum already follows from b = 0.
  std::size_t augmented_rank = 0;
};

/// Dimension facts behind completeness: the elementals are independent, the
/// b_k functionals are independent, and their joint null space with the
/// zero-sum condition is exactly the elemental span.
inline BasisRank elemental_basis_rank(std::size_t n) {
  if (n < 3 || n > kMaxRankN) {
    throw PreconditionError("elemental_basis_rank supports 3 <= n <= " + std::to_string(kMaxRankN) + ", got " +
                            std::to_string(n));
  }
  const Eigen::MatrixXd e = detail::elemental_basis(n);
  const Eigen::MatrixXd b = detail::constraint_rows(n);
  const auto d = static_cast<Eigen::Index>(spacing_count(n));

  Eigen::MatrixXd c(b.rows() + 1, d);
  c.topRows(b.rows()) = b;
  c.row(b.rows()).setConstant(1.0 / std::sqrt(static_cast<double>(d)));

  BasisRank out;
  out.elemental_rank = static_cast<std::size_t>(detail::numerical_rank(e));
  out.constraint_rank = static_cast<std::size_t>(detail::numerical_rank(b));

  // Orthonormal null space of c from the full Q of c^T.
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr_c(c.transpose());
  qr_c.setThreshold(1e-10);
  const Eigen::Index rank_c = qr_c.rank();
  out.augmented_rank = static_cast<std::size_t>(rank_c);
  const Eigen::MatrixXd q = qr_c.householderQ();
  const Eigen::MatrixXd kernel = q.rightCols(d - rank_c);

  if (kernel.cols() == 0) {
    out.spans_nullspace = true;
    return out;
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr_e(e);
  const Eigen::MatrixXd coeffs = qr_e.solve(kernel);
  const Eigen::MatrixXd resid = e * coeffs - kernel;
  for (Eigen::Index k = 0; k < kernel.cols(); ++k) {
    out.max_residual = std::max(out.max_residual, resid.col(k).norm() / kernel.col(k).norm());
  }
  out.spans_nullspace = out.max_residual <= 1e-8;
  return out;
}

struct Decomposition {
  ElementalWeights r;
  /// Sum of the recovered elemental weights; 1 for an unbiased estimator.
  double weight_sum;
  double residual;
};

struct NotInSpan {
  /// ||expand(r*) - a|| / ||a|| for the least-squares r*.
  double residual;
};

/// Least-squares solve of expand(r) = a over the elemental basis.
inline std::variant<Decomposition, NotInSpan> membership_decompose(const SpacingWeights& a) {
  const std::size_t n = a.n();
  if (n < 3) return NotInSpan{1.0};
  if (n > detail::kExactBinomialLimit) {
    throw PreconditionError("membership_decompose supports n <= " + std::to_string(detail::kExactBinomialLimit));
  }
  const auto flat = a.flattened();
  const Eigen::Map<const Eigen::VectorXd> target(flat.data(), static_cast<Eigen::Index>(flat.size()));
  const Eigen::MatrixXd e = detail::elemental_basis(n);
  const Eigen::VectorXd x = e.colPivHouseholderQr().solve(target);
  const double norm = target.norm();
  const double residual = norm == 0.0 ? 0.0 : (e * x - target).norm() / norm;
  if (residual > 1e-8) return NotInSpan{residual};

  UpperTriangular r(n);
  const auto idx = elemental_indices(n);
  for (std::size_t c = 0; c < idx.size(); ++c) r(idx[c].i, idx[c].j) = x(static_cast<Eigen::Index>(c));
  auto w = ElementalWeights::unconstrained(std::move(r));
  const double s = w.sum();
  return Decomposition{std::move(w), s, residual};
}

}  // namespace elemental

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "elemental/baselines.hpp"
#include "elemental/certificate.hpp"
#include "elemental/errors.hpp"
#include "elemental/estimators.hpp"
#include "elemental/gpd.hpp"
#include "elemental/random.hpp"
#include "elemental/weights.hpp"

namespace elemental {

/// Replications per seeded chunk. Fixed, so the draws never depend on the
/// number of worker threads.
inline constexpr std::size_t kChunkSize = 250;

struct RunOptions {
  /// 0 means std::thread::hardware_concurrency().
  unsigned threads = 1;
};

struct SamplingSpec {
  double mu = 0.0;
  double sigma = 1.0;
  SampleOrigin origin = SampleOrigin::Resolved;
};

struct SummaryRow {
  std::size_t n = 0;
  double xi = 0.0;
  std::string estimator;
  double mean = 0.0;
  double bias = 0.0;
  /// Sample variance, divisor (replications - 1); 0 for a single replication.
  double variance = 0.0;
  /// sqrt(mean of (estimate - xi)^2).
  double rmse = 0.0;
  double stderr_of_mean = 0.0;
  std::size_t replications = 0;
};

/// Summary over the finite entries of `estimates` (NaN marks a failed
/// replication, e.g. a tie).
inline SummaryRow summarize(std::span<const double> estimates, std::size_t n, double xi, std::string estimator) {
  SummaryRow row;
  row.n = n;
  row.xi = xi;
  row.estimator = std::move(estimator);
  long double sum = 0.0L;
  std::size_t count = 0;
  for (double v : estimates) {
    if (std::isnan(v)) continue;
    sum += v;
    ++count;
  }
  row.replications = count;
  if (count == 0) {
    row.mean = row.bias = row.variance = row.rmse = row.stderr_of_mean = std::numeric_limits<double>::quiet_NaN();
    return row;
  }
  const long double mean = sum / static_cast<long double>(count);
  long double ss = 0.0L, se = 0.0L;
  for (double v : estimates) {
    if (std::isnan(v)) continue;
    const long double d = v - mean;
    const long double e = v - static_cast<long double>(xi);
    ss += d * d;
    se += e * e;
  }
  row.mean = static_cast<double>(mean);
  row.bias = static_cast<double>(mean - static_cast<long double>(xi));
  row.variance = count > 1 ? static_cast<double>(ss / static_cast<long double>(count - 1)) : 0.0;
  row.rmse = static_cast<double>(std::sqrt(se / static_cast<long double>(count)));
  row.stderr_of_mean = std::sqrt(row.variance / static_cast<double>(count));
  return row;
}

namespace detail {

inline unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

/// Calls fn(begin, end, stream) for every chunk of [0, reps); chunk c draws
/// from RandomStream::child(seed, c). Workers only ever write to their own
/// [begin, end) slots, so results do not depend on scheduling.
template <typename Fn>
void for_each_chunk(std::size_t reps, std::uint64_t seed, const RunOptions& opt, Fn&& fn) {
  const std::size_t chunks = (reps + kChunkSize - 1) / kChunkSize;
  auto run = [&](std::size_t c) {
    RandomStream stream = RandomStream::child(seed, c);
    fn(c * kChunkSize, std::min(reps, (c + 1) * kChunkSize), stream);
  };
  const auto threads = static_cast<unsigned>(std::min<std::size_t>(resolve_threads(opt.threads), std::max<std::size_t>(chunks, 1)));
  if (threads <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) run(c);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(chunks);
  {
    std::vector<std::jthread> workers;
    workers.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      workers.emplace_back([&] {
        for (std::size_t c = next++; c < chunks; c = next++) {
          try {
            run(c);
          } catch (...) {
            errors[c] = std::current_exception();
          }
        }
      });
    }
  }
  // lowest failing chunk wins, whatever the completion order was
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

/// Stream seed for one (n, xi) grid point; keyed on the value of xi rather
/// than its position so a point draws the same data in any grid.
inline std::uint64_t point_seed(std::uint64_t seed, std::size_t n, double xi) {
  return derive_seed(derive_seed(seed, n), std::bit_cast<std::uint64_t>(xi + 0.0));
}

inline GpdParams params_for(const SamplingSpec& s, double xi) { return GpdParams(s.mu, s.sigma, xi); }

// Offset that takes a sample drawn with `origin` back to natural coordinates.
inline double natural_offset(const GpdParams& p, SampleOrigin origin) {
  if (origin == SampleOrigin::Natural) return 0.0;
  if (!p.exponential() && p.xi() < -0.5) return p.mu() - p.sigma() / p.xi();
  return p.mu();
}

}  // namespace detail

/// Elemental estimates for `reps` fresh samples: row r holds the vector of
/// replication r in elemental_indices(n) order. A replication whose sample
/// contains a tie becomes a row of NaN.
inline Eigen::MatrixXd elemental_replications(std::size_t n, double xi, std::size_t reps, std::uint64_t seed,
                                              const SamplingSpec& sampling = {}, const RunOptions& opt = {}) {
  if (n < 3) throw PreconditionError("elemental estimators need n >= 3");
  const GpdParams p = detail::params_for(sampling, xi);
  const auto m = static_cast<Eigen::Index>(elemental_count(n));
  Eigen::MatrixXd out(static_cast<Eigen::Index>(reps), m);
  detail::for_each_chunk(reps, seed, opt, [&](std::size_t begin, std::size_t end, RandomStream& rs) {
    for (std::size_t r = begin; r < end; ++r) {
      const OrderedSample s = sample_in(p, n, rs, sampling.origin);
      try {
        const auto v = elemental_vector(LogSpacingMatrix(s));
        for (Eigen::Index c = 0; c < m; ++c) out(static_cast<Eigen::Index>(r), c) = v[static_cast<std::size_t>(c)];
      } catch (const TieError&) {
        out.row(static_cast<Eigen::Index>(r)).setConstant(std::numeric_limits<double>::quiet_NaN());
      }
    }
  });
  return out;
}

struct ExperimentConfig {
  std::vector<std::size_t> n_values{7};
  std::vector<double> xi_values{0.0};
  std::size_t replications = 50000;
  std::uint64_t seed = 1;
  /// Extra combined-estimator row per grid point when set.
  std::optional<SchemeName> scheme;
  std::optional<ElementalWeights> custom_weights;
  /// Adds Pickands and Hill rows (default k).
  bool baselines = false;
  SamplingSpec sampling;
  RunOptions run;

  void validate() const {
    if (replications < 1) throw PreconditionError("replications must be at least 1");
    if (n_values.empty() || xi_values.empty()) throw PreconditionError("empty experiment grid");
    for (auto n : n_values) {
      if (n < 3) throw PreconditionError("every sample size must be at least 3");
    }
    for (double xi : xi_values) {
      if (!std::isfinite(xi)) throw PreconditionError("tail parameters must be finite");
    }
    GpdParams(sampling.mu, sampling.sigma, 0.0);
    if (scheme == SchemeName::Custom && !custom_weights) throw PreconditionError("custom scheme needs weights");
  }
};

inline std::string elemental_label(ElementalIndex e) {
  return "elemental_" + std::to_string(e.i) + "_" + std::to_string(e.j);
}

namespace detail {

inline ElementalWeights scheme_weights(SchemeName scheme, const std::optional<ElementalWeights>& custom, std::size_t n) {
  if (scheme != SchemeName::Custom) return named_scheme(scheme, n);
  if (!custom || custom->n() != n) {
    throw PreconditionError("custom weights are not defined for n = " + std::to_string(n));
  }
  return *custom;
}

inline std::string scheme_label(SchemeName scheme) { return std::string(to_string(scheme)); }

// Pickands/Hill on the replications of one grid point; drawn from the same
// chunk streams as the elemental rows so the columns are paired.
inline std::pair<std::vector<double>, std::vector<double>> baseline_replications(std::size_t n, double xi,
                                                                                 std::size_t reps,
                                                                                 std::uint64_t seed,
                                                                                 const SamplingSpec& sampling,
                                                                                 const RunOptions& opt) {
  const GpdParams p = params_for(sampling, xi);
  const double offset = natural_offset(p, sampling.origin);
  std::vector<double> pk(reps), hl(reps);
  const std::size_t kp = std::max<std::size_t>(default_pickands_k(n), 1);
  const std::size_t kh = std::max<std::size_t>(default_hill_k(n), 1);
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  for_each_chunk(reps, seed, opt, [&](std::size_t begin, std::size_t end, RandomStream& rs) {
    for (std::size_t r = begin; r < end; ++r) {
      const OrderedSample s = sample_in(p, n, rs, sampling.origin);
      try {
        pk[r] = pickands(s, kp);
      } catch (const std::exception&) {
        pk[r] = nan;
      }
      try {
        hl[r] = hill(offset == 0.0 ? s : s.shifted(offset), kh);
      } catch (const std::exception&) {
        hl[r] = nan;
      }
    }
  });
  return {std::move(pk), std::move(hl)};
}

}  // namespace detail

/// Mean, bias and spread of every elemental estimator over fresh samples, one
/// row per (n, xi, elemental), plus the configured scheme and baselines.
inline std::vector<SummaryRow> bias_sweep(const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<SummaryRow> rows;
  for (std::size_t n : cfg.n_values) {
    const auto idx = elemental_indices(n);
    std::optional<std::vector<double>> scheme_r;
    if (cfg.scheme) scheme_r = detail::scheme_weights(*cfg.scheme, cfg.custom_weights, n).flattened();
    for (double xi : cfg.xi_values) {
      const std::uint64_t seed = detail::point_seed(cfg.seed, n, xi);
      const Eigen::MatrixXd e = elemental_replications(n, xi, cfg.replications, seed, cfg.sampling, cfg.run);
      std::vector<double> col(cfg.replications);
      for (std::size_t c = 0; c < idx.size(); ++c) {
        for (std::size_t r = 0; r < cfg.replications; ++r) {
          col[r] = e(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
        }
        rows.push_back(summarize(col, n, xi, elemental_label(idx[c])));
      }
      if (scheme_r) {
        for (std::size_t r = 0; r < cfg.replications; ++r) {
          double v = 0.0;
          for (std::size_t c = 0; c < idx.size(); ++c) {
            v += (*scheme_r)[c] * e(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
          }
          col[r] = v;
        }
        rows.push_back(summarize(col, n, xi, detail::scheme_label(*cfg.scheme)));
      }
      if (cfg.baselines) {
        auto [pk, hl] = detail::baseline_replications(n, xi, cfg.replications, seed, cfg.sampling, cfg.run);
        rows.push_back(summarize(pk, n, xi, "pickands_k" + std::to_string(std::max<std::size_t>(default_pickands_k(n), 1))));
        rows.push_back(summarize(hl, n, xi, "hill_k" + std::to_string(std::max<std::size_t>(default_hill_k(n), 1))));
      }
    }
  }
  return rows;
}

/// Sample covariance (divisor rows - 1) of the columns of `x`, skipping rows
/// that contain NaN. Exactly symmetric.
inline Eigen::MatrixXd sample_covariance(const Eigen::MatrixXd& x) {
  std::vector<Eigen::Index> keep;
  keep.reserve(static_cast<std::size_t>(x.rows()));
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    if (!x.row(r).hasNaN()) keep.push_back(r);
  }
  if (keep.size() < 2) throw PreconditionError("covariance needs at least two complete rows");
  Eigen::MatrixXd c(static_cast<Eigen::Index>(keep.size()), x.cols());
  for (std::size_t k = 0; k < keep.size(); ++k) c.row(static_cast<Eigen::Index>(k)) = x.row(keep[k]);
  c.rowwise() -= c.colwise().mean();
  Eigen::MatrixXd cov(x.cols(), x.cols());
  cov.triangularView<Eigen::Upper>() = (c.transpose() * c) / static_cast<double>(c.rows() - 1);
  cov.triangularView<Eigen::StrictlyLower>() = cov.transpose().triangularView<Eigen::StrictlyLower>();
  return cov;
}

/// m x m sample covariance of the elemental estimators, m = (n-1)(n-2)/2.
inline Eigen::MatrixXd elemental_covariance(std::size_t n, double xi, std::size_t reps, std::uint64_t seed,
                                            const SamplingSpec& sampling = {}, const RunOptions& opt = {}) {
  const std::size_t m = elemental_count(n);
  if (n < 3) throw PreconditionError("elemental covariance needs n >= 3");
  if (reps < m + 2) {
    throw PreconditionError("elemental covariance for n = " + std::to_string(n) + " needs at least " +
                            std::to_string(m + 2) + " replications, got " + std::to_string(reps));
  }
  return sample_covariance(elemental_replications(n, xi, reps, seed, sampling, opt));
}

struct OptimalWeights {
  Eigen::VectorXd r;
  /// r^T Sigma r with the unregularised Sigma.
  double min_variance = 0.0;
  /// lambda of the stationarity condition 2 Sigma r = lambda 1; equals
  /// 2 * min_variance up to the ridge.
  double lagrange_multiplier = 0.0;
  /// Ridge actually added to the diagonal.
  double ridge = 0.0;
};

/// Minimises r^T Sigma r subject to sum r = 1. The KKT system
///   [2 Sigma  -1] [r     ]   [0]
///   [1^T       0] [lambda] = [1]
/// is solved through its Schur complement: r = Sigma^-1 1 / (1^T Sigma^-1 1),
/// lambda = 2 / (1^T Sigma^-1 1). Sigma gets a ridge eps * trace / m with
/// eps = 1e-10, raised tenfold up to 1e-6 while the factorisation fails.
inline OptimalWeights optimal_weights(const Eigen::MatrixXd& cov) {
  const Eigen::Index m = cov.rows();
  if (m == 0 || cov.cols() != m) throw PreconditionError("covariance must be square and non-empty");
  if ((cov - cov.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, cov.cwiseAbs().maxCoeff())) {
    throw PreconditionError("covariance must be symmetric");
  }
  const double base = cov.trace() / static_cast<double>(m);
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(m);
  double rcond = 0.0;
  for (double eps = 1e-10; eps <= 1e-6 * 1.0001; eps *= 10.0) {
    const double ridge = eps * base;
    Eigen::MatrixXd reg = cov;
    reg.diagonal().array() += ridge;
    const Eigen::LLT<Eigen::MatrixXd> llt(reg);
    if (llt.info() != Eigen::Success) continue;
    rcond = llt.rcond();
    if (!(rcond > 1e-15)) continue;
    const Eigen::VectorXd y = llt.solve(ones);
    const double denom = ones.dot(y);
    if (!(denom > 0.0) || !std::isfinite(denom)) continue;
    OptimalWeights out;
    out.r = y / denom;
    out.min_variance = out.r.dot(cov * out.r);
    out.lagrange_multiplier = 2.0 / denom;
    out.ridge = ridge;
    return out;
  }
  throw NumericalError("KKT system for the optimal weights is singular after ridge regularisation", rcond);
}

/// Turns a weight vector in elemental_indices(n) order into a matrix; the
/// result is rescaled to unit sum.
inline ElementalWeights to_elemental_weights(const Eigen::VectorXd& r, std::size_t n) {
  if (static_cast<std::size_t>(r.size()) != elemental_count(n)) {
    throw PreconditionError("weight vector length does not match n = " + std::to_string(n));
  }
  UpperTriangular m(n);
  const auto idx = elemental_indices(n);
  for (std::size_t c = 0; c < idx.size(); ++c) m(idx[c].i, idx[c].j) = r(static_cast<Eigen::Index>(c));
  return ElementalWeights::normalized(std::move(m));
}

/// Per-replication values of the combination r applied to rows of `e`.
inline Eigen::VectorXd combine(const Eigen::MatrixXd& e, const Eigen::VectorXd& r) { return e * r; }

inline double sample_variance(const Eigen::VectorXd& v) {
  std::vector<double> tmp(v.data(), v.data() + v.size());
  return summarize(tmp, 0, 0.0, {}).variance;
}

inline Eigen::MatrixXd drop_incomplete_rows(const Eigen::MatrixXd& x) {
  std::vector<Eigen::Index> keep;
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    if (!x.row(r).hasNaN()) keep.push_back(r);
  }
  Eigen::MatrixXd out(static_cast<Eigen::Index>(keep.size()), x.cols());
  for (std::size_t k = 0; k < keep.size(); ++k) out.row(static_cast<Eigen::Index>(k)) = x.row(keep[k]);
  return out;
}

struct VarianceBounds {
  /// In-sample optimum on the first block: below the true minimum on average.
  double lower = 0.0;
  /// Variance of the first block's weights on the second, held-out block.
  double upper = 0.0;
  OptimalWeights weights;

  double geometric_mean() const { return std::sqrt(lower * upper); }
};

/// Bounds from two blocks of elemental replications (rows = samples).
inline VarianceBounds bounds_from_blocks(const Eigen::MatrixXd& fit_block, const Eigen::MatrixXd& holdout_block) {
  VarianceBounds b;
  b.weights = optimal_weights(sample_covariance(fit_block));
  b.lower = b.weights.min_variance;
  b.upper = sample_variance(combine(drop_incomplete_rows(holdout_block), b.weights.r));
  return b;
}

namespace detail {

inline std::pair<std::uint64_t, std::uint64_t> block_seeds(std::uint64_t seed, std::size_t n, double xi) {
  const std::uint64_t base = point_seed(seed, n, xi);
  return {derive_seed(base, 0), derive_seed(base, 1)};
}

}  // namespace detail

/// Two independent blocks of `block_size` samples: fit the optimal weights on
/// the first, report their in-sample variance (lower) and their variance on
/// the second (upper).
inline VarianceBounds min_variance_bounds(std::size_t n, double xi, std::size_t block_size, std::uint64_t seed,
                                          const SamplingSpec& sampling = {}, const RunOptions& opt = {}) {
  const std::size_t m = elemental_count(n);
  if (n < 3 || block_size < m + 2) {
    throw PreconditionError("block size must be at least (n-1)(n-2)/2 + 2 = " + std::to_string(m + 2));
  }
  const auto [s1, s2] = detail::block_seeds(seed, n, xi);
  const Eigen::MatrixXd fit = elemental_replications(n, xi, block_size, s1, sampling, opt);
  const Eigen::MatrixXd hold = elemental_replications(n, xi, block_size, s2, sampling, opt);
  return bounds_from_blocks(fit, hold);
}

struct NamedWeights {
  std::string id;
  ElementalWeights r;
};

struct EfficiencyRow {
  std::size_t n = 0;
  double xi = 0.0;
  std::string scheme;
  /// min_variance / scheme_variance.
  double efficiency = 0.0;
  /// Geometric mean of the two bounds.
  double min_variance = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double scheme_variance = 0.0;
  /// The scheme's summary on the held-out block.
  SummaryRow held_out;
};

/// Relative efficiency of certified-unbiased schemes against the numerically
/// optimal combination at each xi. Scheme variances are measured on the
/// held-out block that also yields the upper bound.
inline std::vector<EfficiencyRow> relative_efficiency(const std::vector<NamedWeights>& schemes, std::size_t n,
                                                      const std::vector<double>& xi_grid, std::size_t block_size,
                                                      std::uint64_t seed, const SamplingSpec& sampling = {},
                                                      const RunOptions& opt = {}) {
  for (const auto& s : schemes) {
    if (s.r.n() != n) throw PreconditionError("scheme " + s.id + " is not defined for n = " + std::to_string(n));
    if (!certify(s.r).passed) throw PreconditionError("scheme " + s.id + " is not certified unbiased");
  }
  const std::size_t m = elemental_count(n);
  if (n < 3 || block_size < m + 2) {
    throw PreconditionError("block size must be at least (n-1)(n-2)/2 + 2 = " + std::to_string(m + 2));
  }
  std::vector<EfficiencyRow> rows;
  for (double xi : xi_grid) {
    const auto [s1, s2] = detail::block_seeds(seed, n, xi);
    const Eigen::MatrixXd fit = elemental_replications(n, xi, block_size, s1, sampling, opt);
    const Eigen::MatrixXd hold = drop_incomplete_rows(elemental_replications(n, xi, block_size, s2, sampling, opt));
    const VarianceBounds b = bounds_from_blocks(fit, hold);
    for (const auto& s : schemes) {
      const auto flat = s.r.flattened();
      const Eigen::Map<const Eigen::VectorXd> r(flat.data(), static_cast<Eigen::Index>(flat.size()));
      const Eigen::VectorXd values = combine(hold, r);
      std::vector<double> tmp(values.data(), values.data() + values.size());
      EfficiencyRow row;
      row.n = n;
      row.xi = xi;
      row.scheme = s.id;
      row.lower = b.lower;
      row.upper = b.upper;
      row.min_variance = b.geometric_mean();
      row.held_out = summarize(tmp, n, xi, s.id);
      row.scheme_variance = row.held_out.variance;
      row.efficiency = row.min_variance / row.scheme_variance;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

struct ConsistencyRow {
  SummaryRow summary;
  /// 1 - sqrt(2 / n): maps n = infinity to 1.
  double axis = 0.0;
};

/// RMSE of one combination over a grid of sample sizes and tail parameters.
inline std::vector<ConsistencyRow> consistency_study(SchemeName scheme, const std::vector<double>& xi_grid,
                                                     const std::vector<std::size_t>& n_grid, std::size_t reps,
                                                     std::uint64_t seed, const SamplingSpec& sampling = {},
                                                     const RunOptions& opt = {},
                                                     const std::optional<ElementalWeights>& custom = std::nullopt) {
  if (reps < 1) throw PreconditionError("replications must be at least 1");
  std::vector<ConsistencyRow> rows;
  for (double xi : xi_grid) {
    const GpdParams p = detail::params_for(sampling, xi);
    for (std::size_t n : n_grid) {
      if (n < 3) throw PreconditionError("every sample size must be at least 3");
      const SpacingWeights a = scheme == SchemeName::LinearlyRising
                                   ? linearly_rising_spacing_closed_form(n)
                                   : expand(detail::scheme_weights(scheme, custom, n));
      std::vector<double> est(reps);
      detail::for_each_chunk(reps, detail::point_seed(seed, n, xi), opt,
                             [&](std::size_t begin, std::size_t end, RandomStream& rs) {
                               for (std::size_t r = begin; r < end; ++r) {
                                 const OrderedSample s = sample_in(p, n, rs, sampling.origin);
                                 try {
                                   est[r] = evaluate_spacing_weights(s, a);
                                 } catch (const TieError&) {
                                   est[r] = std::numeric_limits<double>::quiet_NaN();
                                 }
                               }
                             });
      ConsistencyRow row;
      row.summary = summarize(est, n, xi, detail::scheme_label(scheme));
      row.axis = 1.0 - std::sqrt(2.0 / static_cast<double>(n));
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

/// Least-squares slope of log(rmse) against log(n) over the rows with tail
/// parameter `xi`.
inline double log_rmse_slope(const std::vector<ConsistencyRow>& rows, double xi) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& r : rows) {
    if (r.summary.xi == xi) pts.emplace_back(std::log(static_cast<double>(r.summary.n)), std::log(r.summary.rmse));
  }
  if (pts.size() < 2) throw PreconditionError("slope needs at least two sample sizes");
  double mx = 0.0, my = 0.0;
  for (auto [x, y] : pts) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(pts.size());
  my /= static_cast<double>(pts.size());
  double sxy = 0.0, sxx = 0.0;
  for (auto [x, y] : pts) {
    sxy += (x - mx) * (y - my);
    sxx += (x - mx) * (x - mx);
  }
  return sxy / sxx;
}

}  // namespace elemental

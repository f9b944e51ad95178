#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <variant>

#include "elemental/certificate.hpp"
#include "elemental/random.hpp"

using namespace elemental;

namespace {

ElementalWeights random_unit_sum(std::size_t n, RandomStream& rs) {
  UpperTriangular r(n);
  for (const auto& e : elemental_indices(n)) r(e.i, e.j) = rs.uniform_open() - 0.3;
  return ElementalWeights::normalized(std::move(r));
}

// Pickands with k = 1 as a spacing matrix: one nonzero weight per column.
SpacingWeights pickands_like(std::size_t n) {
  UpperTriangular a(n);
  a(1, 2) = 1.0 / std::numbers::ln2;
  a(2, 4) = -1.0 / std::numbers::ln2;
  return SpacingWeights(a);
}

}  // namespace

TEST(Digamma, ReferenceValues) {
  // mpmath at 30 digits
  const std::pair<double, double> ref[] = {
      {1.0, -0.57721566490153286061},  {2.0, 0.42278433509846713939},  {0.5, -1.9635100260214234794},
      {0.1, -10.423754940411076232},   {1e-3, -1000.5755719318102797}, {3.7, 1.1671535393615114409},
      {5.999, 1.7059363290792256036},  {6.0, 1.7061176684318004727},   {10.5, 2.3030010342976863753},
      {25.0, 3.1987425128519740085},   {100.25, 4.6026712432747125591}, {1234.5, 7.1180162318279978433},
  };
  for (auto [x, want] : ref) EXPECT_NEAR(digamma(x), want, 1e-12 * std::max(1.0, std::abs(want))) << x;
  EXPECT_NEAR(digamma(1.0), -0.5772156649015329, 1e-15);
  EXPECT_NEAR(digamma(2.0), 1.0 - 0.5772156649015329, 1e-15);
}

TEST(Digamma, Recurrence) {
  EXPECT_NEAR(digamma(10.5), digamma(9.5) + 1.0 / 9.5, 1e-13);
  for (double x = 0.05; x < 40.0; x += 0.37) EXPECT_NEAR(digamma(x + 1.0), digamma(x) + 1.0 / x, 1e-12 * (1 + 1 / x));
}

TEST(Digamma, Domain) {
  EXPECT_THROW(digamma(0.0), DomainError);
  EXPECT_THROW(digamma(-1.5), DomainError);
  EXPECT_THROW(digamma(NAN), DomainError);
}

TEST(PsiSums, SingleElemental) {
  for (std::size_t n : {6u, 9u, 20u}) {
    const auto [si, sj] = psi_sums(expand(ElementalWeights::single(n, {3, 6})));
    EXPECT_NEAR(si, -1.0, 1e-12);
    EXPECT_NEAR(sj, -1.0, 1e-12);
  }
}

TEST(PsiSums, LinearlyRisingAndDifferences) {
  const auto [si, sj] = psi_sums(expand(linearly_rising(7)));
  EXPECT_NEAR(si, -1.0, 1e-12);
  EXPECT_NEAR(sj, -1.0, 1e-12);
  UpperTriangular diff(7);
  diff(1, 3) = 1.0;
  diff(2, 6) = -1.0;
  const auto [di, dj] = psi_sums(expand(ElementalWeights::unconstrained(diff)));
  EXPECT_NEAR(di, 0.0, 1e-12);
  EXPECT_NEAR(dj, 0.0, 1e-12);
}

TEST(PsiSums, RequiresZeroSum) {
  UpperTriangular a(3);
  a(1, 2) = 1.0;
  EXPECT_THROW(psi_sums(SpacingWeights::unconstrained(a)), PreconditionError);
}

TEST(BConstraints, HandValues) {
  const auto b = b_constraints(expand(ElementalWeights::single(3, {1, 3})));
  ASSERT_EQ(b.b.size(), 2u);
  EXPECT_EQ(b.b[0], 0.0);
  EXPECT_EQ(b.b[1], 0.0);

  UpperTriangular lone(3);
  lone(1, 2) = 1.0;
  const auto bl = b_constraints(SpacingWeights::unconstrained(lone));
  EXPECT_EQ(bl.b[0], 1.0);
  EXPECT_EQ(bl.b[1], 0.0);
}

TEST(BConstraints, MatchesFactorialForm) {
  // Oracle: the unsimplified factorial form, in long double via lgamma-free
  // products, against the binomial form used by the implementation.
  auto fact = [](int k) {
    long double f = 1;
    for (int q = 2; q <= k; ++q) f *= q;
    return f;
  };
  RandomStream rs(4);
  for (std::size_t n = 3; n <= 12; ++n) {
    UpperTriangular a(n);
    for (std::size_t i = 1; i < n; ++i) {
      for (std::size_t j = i + 1; j <= n; ++j) a(i, j) = rs.uniform_open() - 0.5;
    }
    const auto got = b_constraints(SpacingWeights::unconstrained(a));
    for (int k = 0; k <= static_cast<int>(n) - 2; ++k) {
      long double want = 0;
      for (int i = 1; i <= k + 1; ++i) {
        for (int j = k + 2; j <= static_cast<int>(n); ++j) {
          const long double sign = ((k - i - 1) % 2 == 0) ? 1.0L : -1.0L;
          want += fact(j - 1) / fact(i - 1) * a(i, j) * sign / (fact(k - i + 1) * fact(j - k - 2));
        }
      }
      EXPECT_NEAR(got.b[static_cast<std::size_t>(k)], static_cast<double>(want), 1e-9 * std::max(1.0, got.scale[k]))
          << "n=" << n << " k=" << k;
    }
  }
}

TEST(BConstraints, EveryElementalSatisfiesThem) {
  for (std::size_t n = 3; n <= 12; ++n) {
    for (const auto& e : elemental_indices(n)) {
      const auto a = expand(ElementalWeights::single(n, e));
      EXPECT_LE(b_constraints(a).max_abs(), 1e-10);
      const auto [si, sj] = psi_sums(a);
      EXPECT_NEAR(si, -1.0, 1e-10);
      EXPECT_NEAR(sj, -1.0, 1e-10);
    }
  }
}

TEST(Certify, Examples) {
  EXPECT_TRUE(certify(expand(linearly_rising(7))).passed);
  const auto pk = certify(pickands_like(7));
  EXPECT_TRUE(pk.zero_sum_ok);
  EXPECT_FALSE(pk.passed);
  const auto zero = certify(SpacingWeights(UpperTriangular(5)));
  EXPECT_TRUE(zero.zero_sum_ok);
  EXPECT_EQ(zero.psi_i_sum, 0.0);
  EXPECT_FALSE(zero.passed);
}

TEST(Certify, NonZeroSumIsReportedNotThrown) {
  UpperTriangular a(4);
  a(1, 2) = 1.0;
  CertificateReport r;
  EXPECT_NO_THROW(r = certify(SpacingWeights::unconstrained(a)));
  EXPECT_FALSE(r.zero_sum_ok);
  EXPECT_FALSE(r.passed);
}

TEST(Certify, RandomUnitSumCombinationsPass) {
  RandomStream rs(77);
  for (std::size_t n = 3; n <= 12; ++n) {
    for (int rep = 0; rep < 1000; ++rep) ASSERT_TRUE(certify(random_unit_sum(n, rs)).passed) << n;
  }
}

TEST(Certify, NamedSchemesPassUpToLargeN) {
  for (std::size_t n : {20u, 30u, 50u, 64u}) {
    for (SchemeName s : kNamedSchemes) EXPECT_TRUE(certify(named_scheme(s, n)).passed) << n << " " << to_string(s);
  }
}

TEST(Certify, PerturbedCombinationFails) {
  auto a = expand(linearly_rising(10)).matrix();
  a(2, 5) += 1e-6;
  a(3, 5) -= 1e-6;
  EXPECT_FALSE(certify(SpacingWeights(a)).passed);
}

TEST(Certify, MonteCarloExpectationOfLogG) {
  // E[log G_(j)] = psi(j) - psi(n+1) for the j-th smallest of n uniforms; with
  // zero-sum weights the psi(n+1) term drops out.
  const std::size_t n = 8;
  RandomStream rs(31337);
  UpperTriangular lone(n);
  lone(2, 5) = 1.0;
  lone(1, 7) = -1.0;
  const SpacingWeights tests[] = {expand(linearly_rising(n)), expand(ElementalWeights::single(n, {2, 6})),
                                  SpacingWeights(lone)};
  const int draws = 200000;
  std::vector<double> g(n);
  std::vector<std::vector<double>> acc(3);
  for (int d = 0; d < draws; ++d) {
    for (auto& v : g) v = rs.uniform_open();
    std::sort(g.begin(), g.end());
    for (int t = 0; t < 3; ++t) {
      double s = 0.0;
      for (std::size_t i = 1; i < n; ++i) {
        for (std::size_t j = i + 1; j <= n; ++j) s += tests[t](i, j) * std::log(g[j - 1]);
      }
      acc[t].push_back(s);
    }
  }
  for (int t = 0; t < 3; ++t) {
    double mean = 0.0;
    for (double v : acc[t]) mean += v;
    mean /= draws;
    double var = 0.0;
    for (double v : acc[t]) var += (v - mean) * (v - mean);
    var /= draws - 1;
    const double se = std::sqrt(var / draws);
    EXPECT_NEAR(mean, psi_sums(tests[t]).second, 4 * se) << t;
  }
}

TEST(BasisRank, Examples) {
  const auto r7 = elemental_basis_rank(7);
  EXPECT_EQ(r7.elemental_rank, 15u);
  EXPECT_EQ(r7.constraint_rank, 6u);
  const auto r3 = elemental_basis_rank(3);
  EXPECT_EQ(r3.elemental_rank, 1u);
  EXPECT_EQ(r3.constraint_rank, 2u);
  EXPECT_TRUE(r3.spans_nullspace);
  EXPECT_EQ(elemental_basis_rank(4).elemental_rank, 3u);
  EXPECT_THROW(elemental_basis_rank(2), PreconditionError);
  EXPECT_THROW(elemental_basis_rank(31), PreconditionError);
}

TEST(BasisRank, CompletenessFacts) {
  for (std::size_t n = 4; n <= 12; ++n) {
    const auto r = elemental_basis_rank(n);
    EXPECT_EQ(r.elemental_rank, elemental_count(n)) << n;
    EXPECT_EQ(r.constraint_rank, n - 1) << n;
    EXPECT_TRUE(r.spans_nullspace) << n << " residual " << r.max_residual;
    // the zero-sum row adds nothing: b = 0 already forces zero sum
    EXPECT_EQ(r.augmented_rank, n - 1) << n;
  }
}

TEST(Membership, RoundTrips) {
  const auto lr = linearly_rising(7);
  const auto res = membership_decompose(expand(lr));
  ASSERT_TRUE(std::holds_alternative<Decomposition>(res));
  const auto& d = std::get<Decomposition>(res);
  EXPECT_LE(max_abs_diff(d.r.matrix(), lr.matrix()), 1e-10);
  EXPECT_NEAR(d.weight_sum, 1.0, 1e-10);

  const auto single = membership_decompose(expand(ElementalWeights::single(9, {4, 8})));
  ASSERT_TRUE(std::holds_alternative<Decomposition>(single));
  EXPECT_NEAR(std::get<Decomposition>(single).r(4, 8), 1.0, 1e-10);
  EXPECT_NEAR(std::get<Decomposition>(single).r.matrix().abs_sum(), 1.0, 1e-9);
}

TEST(Membership, PickandsIsNotInSpan) {
  const auto res = membership_decompose(pickands_like(10));
  ASSERT_TRUE(std::holds_alternative<NotInSpan>(res));
  EXPECT_GT(std::get<NotInSpan>(res).residual, 1e-3);
}

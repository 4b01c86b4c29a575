#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "ocrs/bounds.hpp"

using namespace ocrs;

namespace {

// Dense tableau simplex with Bland's rule for max c.f, A f <= b, f >= 0, b >= 0.
long double simplex_max(const std::vector<std::vector<long double>>& A, const std::vector<long double>& b,
                        const std::vector<long double>& c) {
  const std::size_t m = A.size(), n = c.size();
  std::vector<std::vector<long double>> T(m + 1, std::vector<long double>(n + m + 1, 0.0L));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) T[i][j] = A[i][j];
    T[i][n + i] = 1.0L;
    T[i][n + m] = b[i];
    basis[i] = n + i;
  }
  for (std::size_t j = 0; j < n; ++j) T[m][j] = -c[j];
  const long double eps = 1e-15L;
  while (true) {
    std::size_t enter = n + m;
    for (std::size_t j = 0; j < n + m; ++j)
      if (T[m][j] < -eps) {
        enter = j;
        break;
      }
    if (enter == n + m) break;
    std::size_t leave = m;
    long double best = 0.0L;
    for (std::size_t i = 0; i < m; ++i) {
      if (T[i][enter] <= eps) continue;
      const long double ratio = T[i][n + m] / T[i][enter];
      if (leave == m || ratio < best - eps || (std::abs(ratio - best) <= eps && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == m) return INFINITY;
    const long double piv = T[leave][enter];
    for (auto& v : T[leave]) v /= piv;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == leave || T[i][enter] == 0.0L) continue;
      const long double f = T[i][enter];
      for (std::size_t j = 0; j <= n + m; ++j) T[i][j] -= f * T[leave][j];
    }
    basis[leave] = enter;
  }
  return T[m][n + m];
}

long double lp_by_simplex(int k) {
  const std::size_t n = 2 * static_cast<std::size_t>(k);
  std::vector<long double> c(n);
  // b_i = C(2k-1, i-1) / 2^(2k-1)
  long double w = std::ldexp(1.0L, -(2 * k - 1));
  for (std::size_t i = 0; i < n; ++i) {
    c[i] = w;
    w = w * static_cast<long double>(n - 1 - i) / static_cast<long double>(i + 1);
  }
  std::vector<std::vector<long double>> A;
  std::vector<long double> b;
  A.emplace_back(n, 1.0L);
  b.push_back(k);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    std::vector<long double> row(n, 0.0L);
    row[i + 1] = 1.0L;
    row[i] = -1.0L;
    A.push_back(row);
    b.push_back(0.0L);
  }
  return simplex_max(A, b, c);
}

}  // namespace

TEST(Lp, SingleItemBarrierIsExactlyHalf) {
  const LpSolution s = lp_cstar(1);
  EXPECT_EQ(s.c_star, 0.5);
  EXPECT_EQ(lp_oracle(1).c_star, 0.5);
}

TEST(Lp, MatchesIndependentSimplex) {
  for (int k = 1; k <= 16; ++k)
    EXPECT_NEAR(lp_cstar(k).c_star, static_cast<double>(lp_by_simplex(k)), 1e-9) << k;
}

TEST(Lp, MatchesVertexOracle) {
  for (int k = 1; k <= 50; ++k) {
    const LpOracleResult o = lp_oracle(k, 2000, 17);
    const double c = lp_cstar(k).c_star;
    ASSERT_NEAR(c, o.c_star, 1e-9) << k;
    ASSERT_LE(o.best_probe, c + 1e-12) << k;
  }
  EXPECT_THROW(lp_oracle(201), TooLarge);
  EXPECT_THROW(lp_cstar(0), BadK);
}

TEST(Lp, SolutionShapeAndObjective) {
  for (int k : {1, 2, 3, 7, 10, 64, 100, 333, 1000}) {
    const LpSolution s = lp_cstar(k);
    ASSERT_GE(s.a, 0);
    ASSERT_LE(s.a, k);
    ASSERT_GE(s.x, s.y);
    ASSERT_GE(s.y, 0.0);
    ASSERT_LE(s.x * (k + s.a) + s.y, k + 1e-9);
    const BinomialSpec half{2 * static_cast<std::int64_t>(k) - 1, 0.5};
    const double objective = s.x * binom_cdf(half, k + s.a - 1) + s.y * binom_pmf(half, k + s.a);
    ASSERT_NEAR(objective, s.c_star, 1e-12) << k;
    ASSERT_EQ(s.coefficients.size(), 2 * k);
  }
}

TEST(Lp, BracketedByHalfAndEnvelope) {
  for (int k : geometric_k_grid(1, 10000, 40)) {
    const LpSolution s = lp_cstar(k);
    ASSERT_GE(s.c_star, 0.5) << k;
    ASSERT_LE(s.c_star, cstar_upper_envelope(k, s.a) + 1e-9) << k;
  }
}

TEST(Envelope, KnownValues) {
  EXPECT_NEAR(cstar_upper_envelope(4, 0), 99.0 / 128.0, 1e-15);
  for (int k : {1, 5, 50}) EXPECT_DOUBLE_EQ(cstar_upper_envelope(k, k), 0.5);
  EXPECT_THROW(cstar_upper_envelope(4, 5), RangeViolation);
  EXPECT_THROW(cstar_upper_envelope(4, -1), RangeViolation);
}

TEST(ImpossibilityCurve, FormulaAndLimit) {
  EXPECT_NEAR(impossibility_curve(3), 1.0 - 0.01 * std::sqrt(std::log(3.0) / 3.0), 1e-15);
  EXPECT_NEAR(impossibility_curve(3), 0.99394, 1e-5);
  EXPECT_LT(impossibility_curve(10), impossibility_curve(1e6));
  EXPECT_NEAR(impossibility_curve(1e12), 1.0, 1e-6);
  EXPECT_THROW(impossibility_curve(1), BadK);
  EXPECT_LE(lp_cstar(10000).c_star, impossibility_curve(10000));
}

TEST(ImpossibilityCurve, SweepFindsThreshold) {
  const auto ks = geometric_k_grid(2, 2000, 20);
  const ImpossibilitySweep s = impossibility_sweep(ks);
  ASSERT_TRUE(s.k0.has_value());
  for (std::size_t i = 0; i < s.ks.size(); ++i)
    if (s.ks[i] >= *s.k0) EXPECT_LE(s.c_star[i], s.curve[i]);
}

TEST(Hks, ValuesAtHundred) {
  const HksGuarantee g = hks_guarantee(100);
  EXPECT_NEAR(g.b, 1.0 - std::sqrt(2.0 * std::log(100.0) / 100.0), 1e-15);
  EXPECT_NEAR(g.b, 0.69648, 1e-4);
  EXPECT_NEAR(g.bc, 0.68951, 1e-4);
  EXPECT_DOUBLE_EQ(g.c, 0.99);
  EXPECT_THROW(hks_guarantee(2), BadK);
  // With this b the Chernoff tail is exactly 1/k.
  EXPECT_NEAR(chernoff_tail(g.b, 100), 0.01, 1e-15);
}

TEST(Hks, ChernoffBoundsExactTail) {
  for (int k : {16, 100, 400}) {
    std::vector<double> bs{hks_guarantee(k).b};
    for (int j = 1; j < 100; ++j) bs.push_back(j / 100.0);
    for (double b : bs) {
      const double exact = binom_sf({2 * static_cast<std::int64_t>(k) - 1, b / 2.0}, k);
      ASSERT_LE(exact, chernoff_tail(b, k)) << k << " " << b;
    }
  }
}

TEST(AntiConcentration, FormulaValues) {
  EXPECT_DOUBLE_EQ(anti_concentration_lower(100, 50), 1.0 / 15.0);
  EXPECT_NEAR(anti_concentration_lower(100, 60), std::exp(-16.0) / 15.0, 1e-20);
  EXPECT_THROW(anti_concentration_lower(99, 50), RangeViolation);
  EXPECT_THROW(anti_concentration_lower(100, 49), RangeViolation);
  EXPECT_THROW(anti_concentration_lower(100, 63), RangeViolation);
}

TEST(AntiConcentration, LowerBoundsExactTail) {
  for (std::int64_t n : {100, 1000}) {
    for (std::int64_t kp = n / 2; 8 * kp <= 5 * n; ++kp) {
      const double exact = binom_sf({n, 0.5}, kp);
      ASSERT_GE(exact, anti_concentration_lower(n, static_cast<double>(kp))) << n << " " << kp;
    }
  }
}

TEST(GreedyFrontier, HardInstanceValue) {
  EXPECT_NEAR(greedy_hard_instance_value(1.0, 4), 0.5, 1e-15);
  EXPECT_NEAR(greedy_hard_instance_value(1.0, 1), 0.5, 1e-15);
  const GreedyFrontier f = greedy_bc_frontier(4);
  EXPECT_GE(f.value, 0.5);
  EXPECT_GT(f.b, 0.0);
  EXPECT_LE(f.b, 1.0);
  // The refined optimum beats every grid point.
  for (int j = 1; j <= 1000; ++j) ASSERT_LE(greedy_hard_instance_value(j / 1000.0, 4), f.value + 1e-15);
}

TEST(Guarantees, ClosedForms) {
  EXPECT_NEAR(*ocrs_guarantee(100), 0.7, 1e-15);
  EXPECT_NEAR(*ocrs_guarantee(400), 0.95 * (1.0 - 2.0 / 19.0), 1e-15);
  EXPECT_FALSE(ocrs_guarantee(9).has_value());
  EXPECT_FALSE(ocrs_guarantee(1).has_value());
  EXPECT_DOUBLE_EQ(*algorithm_d_guarantee(5), 0.5);
  EXPECT_FALSE(algorithm_d_guarantee(3).has_value());
  EXPECT_FALSE(algorithm_d_guarantee(1).has_value());
}

TEST(Guarantees, PerSchemeApplicability) {
  const Instance full = validate_instance(Eigen::VectorXd::Constant(200, 0.5), 100);
  const Instance slim = validate_instance(Eigen::VectorXd::Constant(200, 0.45), 100, 0.9);
  EXPECT_NEAR(*scheme_guarantee(SchemeSpec::simple(), full), 0.7, 1e-15);
  EXPECT_FALSE(scheme_guarantee(SchemeSpec::algorithm_d(10), full).has_value());
  EXPECT_NEAR(*scheme_guarantee(SchemeSpec::algorithm_d(10), slim), 7.0 / 9.0, 1e-15);
  EXPECT_FALSE(scheme_guarantee(SchemeSpec::greedy(), full).has_value());
  EXPECT_NEAR(*scheme_guarantee(SchemeSpec::scaled(hks_guarantee(100).b), full), hks_guarantee(100).bc, 1e-12);
  SchemeSpec wrapped = SchemeSpec::simple();
  wrapped.wrap = 0.5;
  EXPECT_FALSE(scheme_guarantee(wrapped, full).has_value());
}

TEST(Grid, GeometricEndpoints) {
  const auto g = geometric_k_grid(1, 100000, 30);
  EXPECT_EQ(g.front(), 1);
  EXPECT_EQ(g.back(), 100000);
  for (std::size_t i = 1; i < g.size(); ++i) EXPECT_LT(g[i - 1], g[i]);
  EXPECT_THROW(geometric_k_grid(5, 4, 3), BadParameters);
}

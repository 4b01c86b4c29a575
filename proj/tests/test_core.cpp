#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <set>

#include "ocrs/core.hpp"
#include "ocrs/trace.hpp"

using namespace ocrs;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd x(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double e : v) x[i++] = e;
  return x;
}

}  // namespace

TEST(RandomSource, SameKeySameStream) {
  RandomSource a(42, 7), b(42, 7);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.next_u64(), b.next_u64());
}

TEST(RandomSource, AdjacentStreamsDiffer) {
  RandomSource a(42, 7), b(42, 8), c(43, 7);
  int same_b = 0, same_c = 0;
  for (int i = 0; i < 100; ++i) {
    const auto va = a.next_u64();
    same_b += va == b.next_u64();
    same_c += va == c.next_u64();
  }
  EXPECT_EQ(same_b, 0);
  EXPECT_EQ(same_c, 0);
}

TEST(RandomSource, UniformInUnitInterval) {
  RandomSource r(1, 0);
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = r.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / 100000, 0.5, 0.005);
}

TEST(RandomSource, BelowCoversRangeUniformly) {
  RandomSource r(9, 3);
  std::vector<int> hits(7, 0);
  for (int i = 0; i < 70000; ++i) ++hits[r.below(7)];
  for (int h : hits) EXPECT_NEAR(h, 10000, 500);
  EXPECT_EQ(r.below(1), 0u);
  EXPECT_EQ(r.below(0), 0u);
}

TEST(ValidateInstance, AcceptsBoundaryBudget) {
  const Instance inst = validate_instance(vec({1.0, 1.0, 0.0}), 2);
  EXPECT_EQ(inst.size(), 3u);
  EXPECT_EQ(inst.k(), 2);
  EXPECT_DOUBLE_EQ(inst.total(), 2.0);
  EXPECT_FALSE(inst.has_partition());
}

TEST(ValidateInstance, BudgetSlackIsAbsolute) {
  EXPECT_NO_THROW(validate_instance(vec({1.0, 1.0 + 0.0, 5e-13}), 2));
  EXPECT_THROW(validate_instance(vec({1.0, 1.0, 1e-11}), 2), BudgetExceeded);
}

TEST(ValidateInstance, RejectsOutOfRangeProbabilities) {
  try {
    validate_instance(vec({0.2, 1.5}), 2);
    FAIL();
  } catch (const OutOfRangeProbability& e) {
    EXPECT_EQ(e.index(), 1u);
  }
  EXPECT_THROW(validate_instance(vec({-0.1}), 1), OutOfRangeProbability);
  EXPECT_THROW(validate_instance(vec({std::nan("")}), 1), OutOfRangeProbability);
}

TEST(ValidateInstance, RejectsBadK) {
  EXPECT_THROW(validate_instance(vec({0.1}), 0), BadK);
  EXPECT_THROW(validate_instance(vec({0.1}), -3), BadK);
}

TEST(ValidateInstance, ScaledPolytope) {
  EXPECT_NO_THROW(validate_instance(vec({0.5, 0.5}), 2, 0.5));
  EXPECT_THROW(validate_instance(vec({0.6, 0.5}), 2, 0.5), BudgetExceeded);
  EXPECT_THROW(validate_instance(vec({0.1}), 1, 0.0), BadParameters);
  EXPECT_THROW(validate_instance(vec({0.1}), 1, 1.5), BadParameters);
}

TEST(ValidateInstance, Partition) {
  std::vector<Part> ok{{1, {0, 2}}, {1, {1}}};
  const Instance inst = validate_instance(vec({0.5, 0.5, 0.5}), 2, 1.0, ok);
  ASSERT_TRUE(inst.has_partition());
  EXPECT_EQ(inst.part_of(), (std::vector<int>{0, 1, 0}));

  EXPECT_THROW(validate_instance(vec({0.5, 0.5, 0.5}), 2, 1.0, std::vector<Part>{{1, {0, 1}}, {1, {1, 2}}}),
               BadPartition);
  EXPECT_THROW(validate_instance(vec({0.5, 0.5, 0.5}), 2, 1.0, std::vector<Part>{{2, {0, 1}}}), BadPartition);
  EXPECT_THROW(validate_instance(vec({0.5, 0.5, 0.5}), 2, 1.0, std::vector<Part>{{1, {0, 1}}, {0, {2}}}),
               BadPartition);
  EXPECT_THROW(validate_instance(vec({0.5, 0.5, 0.5}), 2, 1.0, std::vector<Part>{{3, {0, 1}}, {-1, {2}}}),
               BadPartition);
  EXPECT_THROW(validate_instance(vec({0.5, 0.5, 0.5}), 2, 1.0, std::vector<Part>{{2, {0, 1, 5}}}), BadPartition);
  EXPECT_THROW(validate_instance(vec({0.5}), 1).partition(), MissingPartition);
}

TEST(Instance, DigestIsStableAndSensitive) {
  const Instance a = validate_instance(vec({0.25, 0.5}), 1);
  const Instance b = validate_instance(vec({0.25, 0.5}), 1);
  const Instance c = validate_instance(vec({0.25, 0.5}), 2);
  EXPECT_EQ(a.digest(), b.digest());
  EXPECT_NE(a.digest(), c.digest());
  EXPECT_EQ(a.digest().size(), 16u);
}

TEST(Activation, ExtremesAndFrequencies) {
  const Instance inst = validate_instance(vec({0.0, 1.0, 0.3}), 2);
  int hits = 0;
  for (std::uint64_t t = 0; t < 20000; ++t) {
    RandomSource rng(5, t);
    const ActivationPattern p = sample_activation(inst, rng);
    ASSERT_EQ(p.size(), 3u);
    ASSERT_FALSE(p[0]);
    ASSERT_TRUE(p[1]);
    hits += p[2];
  }
  EXPECT_NEAR(hits / 20000.0, 0.3, 4 * std::sqrt(0.21 / 20000));
}

TEST(Activation, DrawsOneUniformPerElement) {
  const Instance inst = validate_instance(vec({0.5, 0.5, 0.5}), 2);
  RandomSource a(3, 0), b(3, 0);
  const ActivationPattern p = sample_activation(inst, a);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(p[i], b.uniform() < 0.5);
  EXPECT_EQ(a.next_u64(), b.next_u64());
}

TEST(CompensatedSums, BeatsNaiveSummation) {
  Eigen::VectorXd v = Eigen::VectorXd::Constant(1000001, 0.1);
  v[0] = 1e8;
  const long double exact = 1e8L + 1000000.0L * static_cast<long double>(0.1);
  EXPECT_NEAR(compensated_sum(v), static_cast<double>(exact), 1e-7);
  const Eigen::VectorXd prefix = compensated_prefix_sums(v);
  EXPECT_EQ(prefix.size(), v.size());
  EXPECT_DOUBLE_EQ(prefix[v.size() - 1], compensated_sum(v));
  EXPECT_DOUBLE_EQ(prefix[0], 1e8);
}

TEST(Orders, PermutationChecks) {
  std::vector<std::size_t> good{2, 0, 1};
  EXPECT_NO_THROW(check_permutation(good, 3));
  EXPECT_THROW(check_permutation(good, 4), LengthMismatch);
  std::vector<std::size_t> dup{0, 0, 1};
  EXPECT_THROW(check_permutation(dup, 3), BadParameters);
  std::vector<std::size_t> far{0, 1, 3};
  EXPECT_THROW(check_permutation(far, 3), IndexOutOfRange);
}

TEST(Orders, PrefixSumsFollowOrder) {
  const Instance inst = validate_instance(vec({0.1, 0.2, 0.4}), 1);
  std::vector<std::size_t> order{2, 0, 1};
  const Eigen::VectorXd xo = x_in_order(inst, order);
  EXPECT_DOUBLE_EQ(xo[0], 0.4);
  const Eigen::VectorXd p = order_prefix_sums(inst, order);
  EXPECT_DOUBLE_EQ(p[0], 0.4);
  EXPECT_NEAR(p[1], 0.5, 1e-15);
  EXPECT_NEAR(p[2], 0.7, 1e-15);
}

TEST(TraceInvariants, DetectsEachViolation) {
  Trace t;
  t.k = 1;
  t.steps = {{0, true, true, std::nullopt, true, 1}, {1, true, false, std::nullopt, false, 1}};
  EXPECT_FALSE(trace_violation(t).has_value());

  Trace bad_count = t;
  bad_count.steps[1].count_after = 2;
  EXPECT_TRUE(trace_violation(bad_count).has_value());

  Trace inactive_selected = t;
  inactive_selected.steps[0].active = false;
  EXPECT_TRUE(trace_violation(inactive_selected).has_value());

  Trace over = t;
  over.steps[1].selected = true;
  over.steps[1].count_after = 2;
  EXPECT_TRUE(trace_violation(over).has_value());
}

#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "hadamard/random.hpp"

using hadamard::RandomStream;

TEST(RandomStream, SameSeedSameSequence) {
  RandomStream a(42);
  RandomStream b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next_u64(), b.next_u64());
}

TEST(RandomStream, SplitsAreIndependentOfParentState) {
  RandomStream a(7);
  const auto child_before = a.split("harness").next_u64();
  a.next_u64();
  a.next_u64();
  EXPECT_EQ(a.split("harness").next_u64(), child_before);
}

TEST(RandomStream, DifferentPurposesDiffer) {
  RandomStream root(7);
  EXPECT_NE(root.split("a").next_u64(), root.split("b").next_u64());
  EXPECT_NE(root.split(std::uint64_t{0}).next_u64(), root.split(std::uint64_t{1}).next_u64());
}

TEST(RandomStream, UniformStaysInRange) {
  RandomStream s(1);
  double lo = 1.0;
  double hi = 0.0;
  double sum = 0.0;
  constexpr int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double u = s.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
    sum += u;
  }
  EXPECT_LT(lo, 1e-3);
  EXPECT_GT(hi, 1.0 - 1e-3);
  EXPECT_NEAR(sum / n, 0.5, 0.01);
  for (int i = 0; i < 1000; ++i) {
    const double v = s.uniform(-3.0, 2.0);
    ASSERT_GE(v, -3.0);
    ASSERT_LT(v, 2.0);
  }
}

TEST(RandomStream, IndexCoversRange) {
  RandomStream s(3);
  std::set<std::size_t> seen;
  for (int i = 0; i < 1000; ++i) {
    const auto k = s.index(5);
    ASSERT_LT(k, 5u);
    seen.insert(k);
  }
  EXPECT_EQ(seen.size(), 5u);
}

class UnitDirection : public ::testing::TestWithParam<int> {};

TEST_P(UnitDirection, HasUnitLengthAndZeroMean) {
  const int dim = GetParam();
  RandomStream s(11);
  std::vector<double> mean(static_cast<std::size_t>(dim), 0.0);
  constexpr int n = 20000;
  for (int i = 0; i < n; ++i) {
    const auto v = s.unit_direction(dim);
    ASSERT_EQ(static_cast<int>(v.size()), dim);
    double norm = 0.0;
    for (std::size_t k = 0; k < v.size(); ++k) {
      norm += v[k] * v[k];
      mean[k] += v[k] / n;
    }
    ASSERT_NEAR(std::sqrt(norm), 1.0, 1e-12);
  }
  for (double m : mean) EXPECT_NEAR(m, 0.0, 0.03);
}

INSTANTIATE_TEST_SUITE_P(Dims, UnitDirection, ::testing::Values(1, 2, 3, 6, 7, 12));

#include <cmath>
#include <cstring>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "hhv/error.hpp"
#include "hhv/means.hpp"

using namespace hhv;

TEST(Means, Arithmetic) {
  EXPECT_EQ(arithmetic_mean(2, 4), 3);
  EXPECT_EQ(arithmetic_mean(7.25, 7.25), 7.25);
  EXPECT_EQ(arithmetic_mean(0, 1), 0.5);
  EXPECT_THROW(arithmetic_mean(-1, 1), InvalidArgument);
}

TEST(Means, Geometric) {
  EXPECT_EQ(geometric_mean(4, 9), 6);
  EXPECT_EQ(geometric_mean(0.3, 0.3), 0.3);
  EXPECT_EQ(geometric_mean(0, 5), 0);
  EXPECT_EQ(geometric_mean(5, 0), 0);
  // No overflow for huge arguments.
  EXPECT_NEAR(geometric_mean(1e300, 1e300 * 4), 2e300, 1e285);
  EXPECT_THROW(geometric_mean(1, std::nan("")), InvalidArgument);
}

TEST(Means, Logarithmic) {
  EXPECT_EQ(logarithmic_mean(2, 2), 2);
  EXPECT_NEAR(logarithmic_mean(1, std::numbers::e), std::numbers::e - 1, 1e-15);
  EXPECT_NEAR(logarithmic_mean(1, std::exp(-1.0)), 1 - std::exp(-1.0), 1e-15);
  EXPECT_THROW(logarithmic_mean(0, 1), InvalidArgument);
  EXPECT_THROW(logarithmic_mean(1, -1), InvalidArgument);
  EXPECT_THROW(logarithmic_mean(1, INFINITY), InvalidArgument);
}

TEST(Means, LogarithmicNearEqualBranch) {
  // Inside the threshold the arithmetic mean is returned.
  const double p = 3.0, q = 3.0 * (1 + 5e-9);
  EXPECT_EQ(logarithmic_mean(p, q), 0.5 * p + 0.5 * q);
  // Just outside, the log1p form stays accurate: L = p*d/log1p(d).
  const double d = 2e-8;
  const double expected = 3.0 * (1 + d / 2 - d * d / 12);
  EXPECT_NEAR(logarithmic_mean(3.0, 3.0 * (1 + d)), expected, 1e-15 * expected);
}

TEST(Means, SymmetryIsBitwise) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-14.0, 14.0);
  for (int i = 0; i < 10000; ++i) {
    const double p = std::exp(u(rng)), q = std::exp(u(rng));
    const double l1 = logarithmic_mean(p, q), l2 = logarithmic_mean(q, p);
    EXPECT_EQ(std::memcmp(&l1, &l2, sizeof l1), 0);
    EXPECT_EQ(geometric_mean(p, q), geometric_mean(q, p));
    EXPECT_EQ(arithmetic_mean(p, q), arithmetic_mean(q, p));
  }
}

TEST(Means, ChainGeometricLogArithmetic) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(std::log(1e-6), std::log(1e6));
  for (int i = 0; i < 10000; ++i) {
    const double p = std::exp(u(rng)), q = std::exp(u(rng));
    const double g = geometric_mean(p, q), l = logarithmic_mean(p, q), a = arithmetic_mean(p, q);
    EXPECT_LE(g, l * (1 + 1e-12));
    EXPECT_LE(l, a * (1 + 1e-12));
  }
}

TEST(Means, LogarithmicHomogeneity) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(std::log(1e-3), std::log(1e3));
  for (double lambda : {1e-3, 1.0, 1e3}) {
    for (int i = 0; i < 2000; ++i) {
      const double p = std::exp(u(rng)), q = std::exp(u(rng));
      const double lhs = logarithmic_mean(lambda * p, lambda * q);
      const double rhs = lambda * logarithmic_mean(p, q);
      EXPECT_NEAR(lhs, rhs, 1e-12 * rhs);
    }
  }
}

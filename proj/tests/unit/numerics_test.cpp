// Copyright 2026 The pickmad Authors
// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <atomic>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>
#include <vector>

#include "pickmad/errors.hpp"
#include "pickmad/numerics.hpp"
#include "pickmad/random.hpp"

namespace pickmad {
namespace {

using numerics::integrate;

TEST(Quadrature, PolynomialAndTranscendental) {
  EXPECT_NEAR(integrate([](double x) { return x * x; }, 0.0, 1.0).value, 1.0 / 3.0, 1e-14);
  EXPECT_NEAR(integrate([](double x) { return std::exp(x); }, 0.0, 2.0).value, std::expm1(2.0),
              1e-12);
  EXPECT_NEAR(integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi).value, 2.0,
              1e-12);
}

TEST(Quadrature, EndpointSingularBehaviour) {
  // Bounded but with an unbounded derivative at 0.
  EXPECT_NEAR(integrate([](double x) { return std::pow(x, 0.1); }, 0.0, 1.0).value, 1.0 / 1.1,
              1e-11);
  // Integrable singularity.
  EXPECT_NEAR(integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, 1e-9, 20000).value,
              2.0, 1e-8);
}

TEST(Quadrature, ThrowsWhenPanelBudgetExhausted) {
  EXPECT_THROW(integrate([](double x) { return std::sin(1.0 / x); }, 0.0, 1.0, 1e-15, 5),
               NumericalError);
}

TEST(RootFinder, FindsBracketedRoot) {
  const double r = numerics::find_root([](double x) { return x * x * x - 2.0; }, 0.0, 2.0, 1e-14);
  EXPECT_NEAR(r, std::cbrt(2.0), 1e-12);
}

TEST(Distributions, NormalAndStudentT) {
  EXPECT_NEAR(numerics::normal_cdf(1.959963984540054), 0.975, 1e-14);
  EXPECT_NEAR(numerics::normal_quantile(0.975), 1.959963984540054, 1e-12);
  EXPECT_NEAR(std::exp(numerics::normal_log_cdf(-3.0)), numerics::normal_cdf(-3.0), 1e-16);
  EXPECT_NEAR(numerics::normal_log_cdf(-10.0), -53.2312851505124705, 1e-12);
  EXPECT_NEAR(numerics::normal_log_cdf(-40.0), -804.608442013753788, 1e-10);
  EXPECT_NEAR(numerics::normal_log_cdf(-19.999), numerics::normal_log_cdf(-20.001), 0.05);
  // t with 4 dof: closed-form CDF 1/2 + x(x^2 + 6) / (2 (x^2 + 4)^1.5).
  for (double x : {-3.0, -0.5, 0.0, 1.2, 5.0}) {
    const double closed = 0.5 + x * (x * x + 6.0) / (2.0 * std::pow(x * x + 4.0, 1.5));
    EXPECT_NEAR(numerics::student_t_cdf(x, 4.0), closed, 1e-14) << x;
    EXPECT_NEAR(numerics::student_t_quantile(closed, 4.0), x, 1e-10) << x;
  }
}

TEST(PairwiseSum, MatchesExactSum) {
  std::vector<double> v(1001);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<double>(i);
  EXPECT_DOUBLE_EQ(numerics::pairwise_sum(v), 500500.0);
  EXPECT_EQ(numerics::pairwise_sum(std::vector<double>{}), 0.0);
}

TEST(ParallelFor, VisitsEveryIndexOnceAndPropagatesErrors) {
  std::vector<std::atomic<int>> hits(257);
  numerics::parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i]++; });
  for (auto& h : hits) EXPECT_EQ(h.load(), 1);
  EXPECT_THROW(numerics::parallel_for(10, 3,
                                      [](std::size_t i) {
                                        if (i == 7) throw std::runtime_error("boom");
                                      }),
               std::runtime_error);
}

TEST(RandomStream, DeterministicAndSplittable) {
  RandomStream a(42);
  RandomStream b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a(), b());
  const RandomStream root(42);
  auto c1 = root.split(1);
  auto c1_again = root.split(1);
  auto c2 = root.split(2);
  EXPECT_EQ(c1(), c1_again());
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 1000; ++i) {
    seen.insert(c1());
    seen.insert(c2());
  }
  EXPECT_EQ(seen.size(), 2000u);
}

TEST(RandomStream, UniformMomentsAndOpenInterval) {
  RandomStream rng(7);
  double sum = 0.0, sum2 = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
    sum2 += u * u;
  }
  EXPECT_NEAR(sum / n, 0.5, 4.0 * std::sqrt(1.0 / 12.0 / n));
  EXPECT_NEAR(sum2 / n, 1.0 / 3.0, 0.003);
}

TEST(RandomStream, NormalAndGammaMoments) {
  RandomStream rng(11);
  const int n = 200000;
  double s = 0.0, s2 = 0.0, g = 0.0, g_small = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    s += z;
    s2 += z * z;
    g += rng.gamma(2.5);
    g_small += rng.gamma(0.5);
  }
  EXPECT_NEAR(s / n, 0.0, 0.012);
  EXPECT_NEAR(s2 / n, 1.0, 0.012);
  EXPECT_NEAR(g / n, 2.5, 4.0 * std::sqrt(2.5 / n));
  EXPECT_NEAR(g_small / n, 0.5, 4.0 * std::sqrt(0.5 / n));
}

}  // namespace
}  // namespace pickmad

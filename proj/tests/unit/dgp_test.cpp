// Copyright 2026 The pickmad Authors
// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "pickmad/block_estimators.hpp"
#include "pickmad/dgp.hpp"
#include "pickmad/errors.hpp"

namespace pickmad {
namespace {

TEST(MovingMax, ComonotoneSymmetricWeightsGiveEqualCoordinates) {
  RandomStream rng(9);
  const auto series = simulate_moving_max({0.5, 0.5, CopulaSpec::comonotone()}, 200, rng);
  for (const auto& p : series.observations()) EXPECT_EQ(p.x1, p.x2);
}

TEST(MovingMax, LengthOneUsesTwoInnovations) {
  RandomStream rng(1);
  const auto series = simulate_moving_max(MovingMaxParams{}, 1, rng);
  ASSERT_EQ(series.size(), 1u);
  EXPECT_GT(series[0].x1, 0.0);
  EXPECT_LT(series[0].x1, 1.0);
}

TEST(MovingMax, FirstMarginUniformAcrossReplicates) {
  // At the 1% level the KS critical value for n = 1000 is about 1.628/sqrt(n).
  const double critical = 1.628 / std::sqrt(1000.0);
  int rejections = 0;
  const RandomStream root(314);
  for (int r = 0; r < 100; ++r) {
    auto rng = root.split(r);
    const auto series = simulate_moving_max(MovingMaxParams{}, 1000, rng);
    if (testing::ks_uniform(series.coordinate(1)) > critical) ++rejections;
  }
  EXPECT_LE(rejections, 5);
}

TEST(MovingMax, StationaryLagOneMoments) {
  RandomStream rng(27);
  const auto series = simulate_moving_max(MovingMaxParams{}, 200000, rng);
  auto window_stats = [&](std::size_t from, std::size_t to) {
    double mean = 0.0, cross = 0.0;
    for (std::size_t t = from; t + 1 < to; ++t) {
      mean += series[t].x1;
      cross += series[t].x1 * series[t + 1].x2;
    }
    const double n = static_cast<double>(to - from - 1);
    return std::pair{mean / n, cross / n};
  };
  const auto [m1, c1] = window_stats(0, 100000);
  const auto [m2, c2] = window_stats(100000, 200000);
  const double se = std::sqrt(2.0 / 12.0 / 99999.0) * 2.0;  // allow for lag-one correlation
  EXPECT_NEAR(m1, m2, 3.0 * se);
  EXPECT_NEAR(c1, c2, 3.0 * se);
}

TEST(MovingMax, ParameterValidation) {
  RandomStream rng(1);
  EXPECT_THROW(simulate_moving_max({0.0, 0.5, CopulaSpec::independence()}, 10, rng), ParameterError);
  EXPECT_THROW(simulate_moving_max({0.5, 1.0, CopulaSpec::independence()}, 10, rng), ParameterError);
  EXPECT_THROW(simulate_moving_max(MovingMaxParams{}, 0, rng), ParameterError);
}

TEST(BlockMaxMargin, Examples) {
  const MovingMaxParams half{0.5, 0.5, CopulaSpec::independence()};
  EXPECT_NEAR(block_max_margin_cdf(half, 1, 1, 0.81), 0.81, 1e-15);
  const MovingMaxParams standard{};
  EXPECT_NEAR(block_max_margin_exponent(standard, 1, 4), 3.25, 1e-15);
  EXPECT_NEAR(block_max_margin_cdf(standard, 1, 4, 0.9), std::pow(0.9, 3.25), 1e-15);
  EXPECT_EQ(block_max_margin_cdf(standard, 2, 7, 1.0), 1.0);
  EXPECT_NEAR(block_max_margin_exponent(standard, 2, 10), 5.5, 1e-15);
}

TEST(BlockMaxMargin, IdentityAtOneMonotoneAndRescalingInvariant) {
  const MovingMaxParams p{0.3, 0.8, CopulaSpec::independence()};
  for (int coord : {1, 2}) {
    double prev = 0.0;
    for (int k = 0; k <= 100; ++k) {
      const double x = k / 100.0;
      EXPECT_NEAR(block_max_margin_cdf(p, coord, 1, x), x, 1e-15);
      const double f = block_max_margin_cdf(p, coord, 9, x);
      EXPECT_GE(f, prev);
      prev = f;
    }
    for (std::size_t m : {1u, 5u, 50u}) {
      const double e = block_max_margin_exponent(p, coord, m);
      for (double x : {0.1, 0.5, 0.95}) {
        EXPECT_NEAR(block_max_margin_cdf(p, coord, m, std::pow(x, 1.0 / e)), x, 1e-14);
      }
    }
  }
}

TEST(BlockMaxMargin, ExponentMatchesSimulatedBlockMaxima) {
  // Disjoint block maxima of a long simulated series against x^e.
  constexpr std::size_t m = 4;
  constexpr std::size_t blocks = 1000000;
  const MovingMaxParams params{};
  RandomStream rng(4242);
  const auto series = simulate_moving_max(params, m * blocks, rng);
  const auto maxima = block_maxima(series, BlockScheme(BlockKind::Disjoint, m));
  for (int coord : {1, 2}) {
    std::vector<double> xs;
    xs.reserve(maxima.size());
    for (const auto& p : maxima) xs.push_back(coord == 1 ? p.x1 : p.x2);
    std::sort(xs.begin(), xs.end());
    double sup = 0.0;
    for (double x : {0.5, 0.7, 0.8, 0.9, 0.95, 0.99}) {
      const double ecdf =
          static_cast<double>(std::upper_bound(xs.begin(), xs.end(), x) - xs.begin()) / xs.size();
      sup = std::max(sup, std::abs(ecdf - block_max_margin_cdf(params, coord, m, x)));
    }
    EXPECT_LT(sup, 0.003) << "coordinate " << coord;
  }
}

TEST(ExactBlockSampler, MatchesBruteForceBlockMaxima) {
  constexpr std::size_t m = 5;
  constexpr std::size_t blocks = 100000;
  for (const auto& innovation : {CopulaSpec::standard_outer_power_clayton(),
                                 CopulaSpec::standard_student_t(), CopulaSpec::independence()}) {
    const MovingMaxParams params{0.25, 0.5, innovation};
    RandomStream sim_rng(RandomStream(55).split(innovation.family_id()));
    const auto series = simulate_moving_max(params, m * blocks, sim_rng);
    const auto brute = block_maxima(series, BlockScheme(BlockKind::Disjoint, m));
    RandomStream exact_rng(RandomStream(56).split(innovation.family_id()));
    std::vector<BivariatePoint> exact;
    for (std::size_t i = 0; i < blocks; ++i) {
      const auto lp = sample_log_block_maximum(params, m, exact_rng);
      exact.push_back({std::exp(lp.x1), std::exp(lp.x2)});
    }
    // Compare joint exceedance-type probabilities on margin quantiles.
    for (double q1 : {0.3, 0.7, 0.95}) {
      for (double q2 : {0.3, 0.7, 0.95}) {
        const double x = std::pow(q1, 1.0 / block_max_margin_exponent(params, 1, m));
        const double y = std::pow(q2, 1.0 / block_max_margin_exponent(params, 2, m));
        auto frac = [&](const std::vector<BivariatePoint>& s) {
          return static_cast<double>(std::count_if(s.begin(), s.end(), [&](const auto& p) {
                   return p.x1 <= x && p.x2 <= y;
                 })) / static_cast<double>(s.size());
        };
        const double a = frac(brute);
        const double b = frac(exact);
        const double se = std::sqrt((a * (1 - a) + b * (1 - b)) / blocks);
        EXPECT_NEAR(a, b, 4.5 * se + 1e-9) << innovation.tag() << " " << q1 << "," << q2;
      }
    }
  }
}

TEST(BivariateSeriesTest, RejectsEmptyAndNonFinite) {
  EXPECT_THROW(BivariateSeries(std::vector<BivariatePoint>{}), InputError);
  EXPECT_THROW(BivariateSeries({{0.1, std::nan("")}}), InputError);
  EXPECT_THROW(BivariateSeries({{INFINITY, 0.2}}), InputError);
  const BivariateSeries s({{1, 2}, {3, 4}});
  EXPECT_EQ(s.coordinate(2), (std::vector<double>{2, 4}));
}

}  // namespace
}  // namespace pickmad

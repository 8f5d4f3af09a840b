// Copyright 2026 The pickmad Authors
// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "oracles.hpp"
#include "pickmad/copula_models.hpp"
#include "pickmad/errors.hpp"
#include "pickmad/numerics.hpp"

namespace pickmad {
namespace {

std::vector<CopulaSpec> all_families() {
  return {CopulaSpec::standard_outer_power_clayton(), CopulaSpec::standard_student_t(),
          CopulaSpec::standard_gaussian(),           CopulaSpec::independence(),
          CopulaSpec::comonotone(),                CopulaSpec::logistic(CopulaSpec::standard_beta())};
}

// Direct transcription of the outer-power Clayton display, in plain powers.
double opc_direct(double u, double v, double theta, double beta) {
  const double s = std::pow(std::pow(u, -theta) - 1.0, beta) + std::pow(std::pow(v, -theta) - 1.0, beta);
  return std::pow(1.0 + std::pow(s, 1.0 / beta), -1.0 / theta);
}

TEST(CopulaCdf, IndependenceProduct) {
  EXPECT_NEAR(cdf(CopulaSpec::independence(), 0.3, 0.7), 0.21, 1e-15);
}

TEST(CopulaCdf, GaussianCentreMatchesOrthantProbability) {
  const double expected = 0.25 + std::asin(0.5) / (2.0 * std::numbers::pi);
  EXPECT_NEAR(expected, 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(cdf(CopulaSpec::standard_gaussian(), 0.5, 0.5), expected, 1e-10);
}

TEST(CopulaCdf, GaussianMatchesOwensTOracle) {
  for (double rho : {-0.7, 0.0, 0.5, 0.9}) {
    const auto spec = CopulaSpec::gaussian(rho);
    for (double u : {0.01, 0.2, 0.6, 0.97}) {
      for (double v : {0.03, 0.45, 0.8, 0.999}) {
        const double oracle = testing::bivariate_normal_cdf(numerics::normal_quantile(u),
                                                            numerics::normal_quantile(v), rho);
        EXPECT_NEAR(cdf(spec, u, v), oracle, 1e-10) << rho << " " << u << " " << v;
      }
    }
  }
}

TEST(CopulaCdf, StudentTCentreMatchesEllipticalOrthant) {
  // Any centred elliptical law has P(X < 0, Y < 0) = 1/4 + asin(rho)/(2 pi).
  const auto spec = CopulaSpec::standard_student_t();
  EXPECT_NEAR(cdf(spec, 0.5, 0.5), 0.25 + std::asin(0.494217) / (2.0 * std::numbers::pi), 1e-10);
}

TEST(CopulaCdf, OuterPowerClaytonMatchesDirectFormula) {
  const auto spec = CopulaSpec::standard_outer_power_clayton();
  const double beta = CopulaSpec::standard_beta();
  for (double u : {0.05, 0.3, 0.5, 0.77, 0.99}) {
    for (double v : {0.1, 0.5, 0.9}) {
      EXPECT_NEAR(cdf(spec, u, v), opc_direct(u, v, 1.0, beta), 1e-13);
    }
  }
}

TEST(CopulaCdf, BoundaryShortCircuits) {
  for (const auto& spec : all_families()) {
    EXPECT_EQ(cdf(spec, 0.0, 0.4), 0.0) << spec.tag();
    EXPECT_EQ(cdf(spec, 0.4, 0.0), 0.0) << spec.tag();
    EXPECT_DOUBLE_EQ(cdf(spec, 1.0, 0.4), 0.4) << spec.tag();
    EXPECT_DOUBLE_EQ(cdf(spec, 0.4, 1.0), 0.4) << spec.tag();
  }
}

TEST(CopulaCdf, RejectsArgumentsOutsideUnitSquare) {
  EXPECT_THROW(cdf(CopulaSpec::independence(), -0.1, 0.5), DomainError);
  EXPECT_THROW(cdf(CopulaSpec::standard_gaussian(), 0.5, 1.5), DomainError);
}

TEST(CopulaProperties, FrechetBoundsAndTwoIncreasingOnGrid) {
  constexpr int kGrid = 101;
  for (const auto& spec : all_families()) {
    std::vector<double> table(kGrid * kGrid);
    for (int i = 0; i < kGrid; ++i) {
      for (int j = 0; j < kGrid; ++j) {
        const double u = i / 100.0;
        const double v = j / 100.0;
        const double c = cdf(spec, u, v);
        table[i * kGrid + j] = c;
        ASSERT_GE(c, std::max(u + v - 1.0, 0.0) - 1e-12) << spec.tag() << " " << u << " " << v;
        ASSERT_LE(c, std::min(u, v) + 1e-12) << spec.tag() << " " << u << " " << v;
      }
    }
    for (int i = 0; i + 1 < kGrid; ++i) {
      for (int j = 0; j + 1 < kGrid; ++j) {
        const double mass = table[(i + 1) * kGrid + j + 1] - table[i * kGrid + j + 1] -
                            table[(i + 1) * kGrid + j] + table[i * kGrid + j];
        ASSERT_GE(mass, -1e-12) << spec.tag() << " cell " << i << "," << j;
      }
    }
  }
}

TEST(CopulaSample, IndependenceMarginsUniform) {
  RandomStream rng(101);
  const auto four = sample(CopulaSpec::independence(), 4, rng);
  EXPECT_EQ(four.size(), 4u);
  const auto draws = sample(CopulaSpec::independence(), 100000, rng);
  std::vector<double> u, v;
  for (const auto& p : draws) {
    u.push_back(p.x1);
    v.push_back(p.x2);
  }
  EXPECT_LT(testing::ks_uniform(u), 0.01);
  EXPECT_LT(testing::ks_uniform(v), 0.01);
}

TEST(CopulaSample, ComonotoneDiagonal) {
  RandomStream rng(5);
  for (const auto& p : sample(CopulaSpec::comonotone(), 3, rng)) EXPECT_EQ(p.x1, p.x2);
}

TEST(CopulaSample, GaussianCentreProbability) {
  RandomStream rng(2024);
  const int n = 100000;
  const auto draws = sample(CopulaSpec::standard_gaussian(), n, rng);
  const double hits = static_cast<double>(std::count_if(
      draws.begin(), draws.end(), [](const auto& p) { return p.x1 <= 0.5 && p.x2 <= 0.5; }));
  const double p = 1.0 / 3.0;
  EXPECT_NEAR(hits / n, p, 3.0 * std::sqrt(p * (1 - p) / n));
}

TEST(CopulaSample, EmpiricalCdfMatchesCdfAndMarginsUniform) {
  for (const auto& spec : all_families()) {
    RandomStream rng(RandomStream(77).split(spec.family_id()));
    const int n = 100000;
    const auto draws = sample(spec, n, rng);
    std::vector<double> u, v;
    for (const auto& p : draws) {
      u.push_back(p.x1);
      v.push_back(p.x2);
    }
    EXPECT_LT(testing::ks_uniform(u), 0.01) << spec.tag();
    EXPECT_LT(testing::ks_uniform(v), 0.01) << spec.tag();
    double worst = 0.0;
    for (double a : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      for (double b : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        const double hits = static_cast<double>(std::count_if(
            draws.begin(), draws.end(), [&](const auto& p) { return p.x1 <= a && p.x2 <= b; }));
        worst = std::max(worst, std::abs(hits / n - cdf(spec, a, b)));
      }
    }
    EXPECT_LE(worst, 0.01) << spec.tag();
  }
}

TEST(ConditionalInverse, IndependenceIsIdentity) {
  EXPECT_NEAR(conditional_inverse(CopulaSpec::independence(), 0.4, 0.25), 0.25, 1e-14);
}

TEST(ConditionalInverse, SelfConsistentForEveryFamily) {
  for (const auto& spec : all_families()) {
    if (spec.tag() == "comonotone") continue;  // degenerate conditional law
    for (double u : {0.05, 0.5, 0.93}) {
      for (double w : {0.01, 0.25, 0.5, 0.75, 0.99}) {
        const double v = conditional_inverse(spec, u, w);
        EXPECT_NEAR(conditional_cdf(spec, u, v), w, 1e-10) << spec.tag() << " " << u << " " << w;
      }
    }
  }
  const auto opc = CopulaSpec::standard_outer_power_clayton();
  const double v = conditional_inverse(opc, 0.5, 0.5);
  EXPECT_NEAR(conditional_cdf(opc, 0.5, v), 0.5, 1e-12);
}

TEST(ConditionalInverse, ConditionalIsPartialDerivativeOfCdf) {
  for (const auto& spec : all_families()) {
    if (spec.tag() == "comonotone") continue;
    for (double u : {0.2, 0.6}) {
      for (double v : {0.3, 0.8}) {
        const double h = 1e-5;
        const double fd = (cdf(spec, u + h, v) - cdf(spec, u - h, v)) / (2 * h);
        EXPECT_NEAR(conditional_cdf(spec, u, v), fd, 1e-6) << spec.tag();
      }
    }
  }
}

TEST(ConditionalInverse, UpperLimitTendsToOne) {
  for (const auto& spec : all_families()) {
    // The comonotone conditional law is a point mass at v = u.
    const double expected = spec.tag() == "comonotone" ? 0.3 : 0.999;
    EXPECT_GE(conditional_inverse(spec, 0.3, 1.0 - 1e-12), expected) << spec.tag();
  }
}

TEST(Attractor, StandardValues) {
  const double beta = CopulaSpec::standard_beta();
  EXPECT_NEAR(beta, std::log(2.0) / std::log(1.75), 1e-15);
  EXPECT_NEAR(attractor_pickands(CopulaSpec::logistic(beta), 0.5), 0.875, 1e-12);
  EXPECT_NEAR(attractor_pickands(CopulaSpec::standard_outer_power_clayton(), 0.5), 0.875, 1e-12);
  for (double t : {0.0, 0.3, 0.5, 1.0}) {
    EXPECT_EQ(attractor_pickands(CopulaSpec::standard_gaussian(), t), 1.0);
  }
  EXPECT_NEAR(attractor_pickands(CopulaSpec::comonotone(), 0.25), 0.75, 1e-15);
}

TEST(Attractor, StudentTTailDependenceIsOneQuarter) {
  // lambda_U = 2 - 2 A(1/2); the t(4) parameter is tuned to 0.25.
  const double a_half = attractor_pickands(CopulaSpec::standard_student_t(), 0.5);
  EXPECT_NEAR(2.0 - 2.0 * a_half, 0.25, 1e-6);
  // Closed-form tail coefficient of the t copula as an independent check.
  const double nu = 4.0, rho = 0.494217;
  const double lambda =
      2.0 * (1.0 - numerics::student_t_cdf(std::sqrt((nu + 1.0) * (1.0 - rho) / (1.0 + rho)), nu + 1.0));
  EXPECT_NEAR(2.0 - 2.0 * a_half, lambda, 1e-12);
}

TEST(Attractor, BoundsConvexityAndEndpoints) {
  for (const auto& spec : all_families()) {
    std::vector<double> a(51);
    for (int k = 0; k <= 50; ++k) {
      const double t = k / 50.0;
      a[k] = attractor_pickands(spec, t);
      EXPECT_GE(a[k], std::max(t, 1.0 - t) - 1e-12) << spec.tag() << " " << t;
      EXPECT_LE(a[k], 1.0 + 1e-12) << spec.tag() << " " << t;
    }
    EXPECT_NEAR(a.front(), 1.0, 1e-12) << spec.tag();
    EXPECT_NEAR(a.back(), 1.0, 1e-12) << spec.tag();
    for (int k = 1; k < 50; ++k) {
      EXPECT_LE(a[k], 0.5 * (a[k - 1] + a[k + 1]) + 1e-9) << spec.tag() << " k=" << k;
    }
  }
}

TEST(MaxOfK, SampleMatchesBruteForceMaxima) {
  // Exact max-of-k sampler against the maximum of k explicit draws.
  constexpr std::size_t k = 7;
  constexpr int n = 40000;
  for (const auto& spec : {CopulaSpec::standard_outer_power_clayton(), CopulaSpec::standard_student_t(),
                           CopulaSpec::standard_gaussian()}) {
    RandomStream fast(RandomStream(3).split(spec.family_id()));
    RandomStream slow(RandomStream(4).split(spec.family_id()));
    std::vector<BivariatePoint> a, b;
    for (int i = 0; i < n; ++i) {
      const auto lm = sample_log_maximum(spec, k, fast);
      a.push_back({std::exp(lm.x1), std::exp(lm.x2)});
      BivariatePoint mx{0.0, 0.0};
      for (std::size_t j = 0; j < k; ++j) {
        const auto p = sample_one(spec, slow);
        mx = {std::max(mx.x1, p.x1), std::max(mx.x2, p.x2)};
      }
      b.push_back(mx);
    }
    for (double x : {0.7, 0.85, 0.95}) {
      for (double y : {0.7, 0.9}) {
        auto frac = [&](const std::vector<BivariatePoint>& s) {
          return static_cast<double>(std::count_if(s.begin(), s.end(), [&](const auto& p) {
                   return p.x1 <= x && p.x2 <= y;
                 })) / n;
        };
        const double exact = std::pow(cdf(spec, x, y), k);
        const double se = std::sqrt(exact * (1.0 - exact) / n);
        EXPECT_NEAR(frac(a), exact, 4.5 * se + 1e-9) << spec.tag() << " fast " << x << "," << y;
        EXPECT_NEAR(frac(b), exact, 4.5 * se + 1e-9) << spec.tag() << " brute " << x << "," << y;
      }
    }
  }
}

TEST(MaxOfK, ConditionalCdfReducesToCopulaConditionalAtKOne) {
  for (const auto& spec : {CopulaSpec::standard_outer_power_clayton(), CopulaSpec::independence(),
                           CopulaSpec::logistic(1.7)}) {
    for (double u : {0.2, 0.7}) {
      for (double v : {0.1, 0.6}) {
        EXPECT_NEAR(max_of_k_conditional_cdf(spec, 1, u, v), conditional_cdf(spec, u, v), 1e-12)
            << spec.tag();
      }
    }
  }
}

TEST(CopulaSpecTest, TagsRoundTripAndValidation) {
  for (const auto& spec : all_families()) EXPECT_EQ(CopulaSpec::from_tag(spec.tag()), spec);
  EXPECT_THROW(CopulaSpec::from_tag("frank"), ParameterError);
  EXPECT_THROW(CopulaSpec::gaussian(1.0), ParameterError);
  EXPECT_THROW(CopulaSpec::student_t(0.0, 0.3), ParameterError);
  EXPECT_THROW(CopulaSpec::outer_power_clayton(0.0, 1.2), ParameterError);
  EXPECT_THROW(CopulaSpec::outer_power_clayton(1.0, 0.9), ParameterError);
  EXPECT_THROW(CopulaSpec::logistic(0.5), ParameterError);
}

}  // namespace
}  // namespace pickmad

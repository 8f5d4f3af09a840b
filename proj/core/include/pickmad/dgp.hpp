// Copyright 2026 The pickmad Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Stationary moving-maximum bivariate time series:
//   X_t1 = max(W_t1^(1/a), W_{t-1,1}^(1/(1-a)))
//   X_t2 = max(W_t2^(1/b), W_{t-1,2}^(1/(1-b)))
// with (W_t1, W_t2) iid from an innovation copula.

#include <cstddef>
#include <span>
#include <vector>

#include "pickmad/copula_models.hpp"
#include "pickmad/random.hpp"
#include "pickmad/types.hpp"

namespace pickmad {

struct MovingMaxParams {
  double a = 0.25;
  double b = 0.5;
  CopulaSpec innovation = CopulaSpec::standard_outer_power_clayton();

  /// Throws ParameterError unless a, b lie strictly inside (0, 1).
  void validate() const;

  /// a = 0.25, b = 0.5 with the given innovation.
  static MovingMaxParams standard(CopulaSpec innovation);

  friend bool operator==(const MovingMaxParams&, const MovingMaxParams&) = default;
};

/// Finite, non-empty sequence of bivariate observations.
class BivariateSeries {
 public:
  /// Throws InputError on an empty sequence or non-finite values.
  explicit BivariateSeries(std::vector<BivariatePoint> observations);

  [[nodiscard]] std::size_t size() const noexcept { return observations_.size(); }
  [[nodiscard]] std::span<const BivariatePoint> observations() const noexcept {
    return observations_;
  }
  [[nodiscard]] const BivariatePoint& operator[](std::size_t i) const { return observations_[i]; }

  [[nodiscard]] std::vector<double> coordinate(int which) const;

 private:
  std::vector<BivariatePoint> observations_;
};

/// Draws W_0..W_n from the innovation copula and returns X_1..X_n.
BivariateSeries simulate_moving_max(const MovingMaxParams& params, std::size_t n,
                                    RandomStream& rng);

/// Exponent e with F_m(x) = x^e for the disjoint block maximum of size m:
/// e = g + (m - 1) max(g, 1 - g) + (1 - g), g = a (coordinate 1) or b (2).
double block_max_margin_exponent(const MovingMaxParams& params, int coordinate, std::size_t m);

/// Exact CDF of the block maximum of size m for one coordinate.
double block_max_margin_cdf(const MovingMaxParams& params, int coordinate, std::size_t m, double x);

/**
 * One block maximum (max over t = 1..m of X_t) drawn exactly in law, on the
 * log scale. W_0 and W_m enter with a single exponent each; the m - 1
 * interior innovations collapse to their coordinatewise maximum, which is
 * drawn through sample_log_maximum. Independent calls give independent
 * blocks.
 */
BivariatePoint sample_log_block_maximum(const MovingMaxParams& params, std::size_t m,
                                        RandomStream& rng);

}  // namespace pickmad

// Copyright 2026 The pickmad Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Closed-form and quadrature oracles for the madogram estimator: the
// extreme-value copula of a Pickands function, the true S(t, c), the
// leading asymptotic bias and variance terms, and a Monte Carlo reference
// Pickands curve for the moving-maximum process.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>

#include "pickmad/copula_models.hpp"
#include "pickmad/dgp.hpp"
#include "pickmad/madogram.hpp"
#include "pickmad/random.hpp"

namespace pickmad {

/// Second-order constants of C_m -> C_inf: S(e^-(1-t), e^-t), the index
/// rho < 0 of the rate a(m), and a(m) itself.
struct SecondOrder {
  double s_value;
  double rho;
  double a_m;
};

/// Limit (extreme-value) model described by its Pickands function.
class LimitModel {
 public:
  /// Attractor of the copula's iid maxima.
  static LimitModel from_copula(const CopulaSpec& spec);
  /// Arbitrary Pickands function; A(0) and A(1) must equal 1.
  static LimitModel from_function(std::function<double(double)> pickands, std::string label);

  [[nodiscard]] double pickands(double t) const { return pickands_(t); }
  [[nodiscard]] const std::string& label() const noexcept { return label_; }

  [[nodiscard]] const std::optional<SecondOrder>& second_order() const noexcept {
    return second_order_;
  }
  /// Throws ParameterError unless rho < 0 and a_m > 0.
  LimitModel& with_second_order(SecondOrder so);

 private:
  LimitModel(std::function<double(double)> pickands, std::string label);

  std::function<double(double)> pickands_;
  std::string label_;
  std::optional<SecondOrder> second_order_;
};

/// C(u, v) = exp{log(uv) A(log v / log(uv))}; zero on the lower boundary.
double extreme_copula_cdf(const LimitModel& model, double u, double v);

/// S(t, c) = 1 - int_0^1 C(y^(c(1-t)), y^(ct)) dy by adaptive quadrature
/// (absolute error <= 1e-10). Throws NumericalError on failure.
double true_madogram(const LimitModel& model, double t, double c);

/// Closed form c A(t) / (c A(t) + 1).
double true_madogram_closed_form(const LimitModel& model, double t, double c);

/// (m/n) (cA + 1)^2 A / (c (cA + 2)).
double asymptotic_variance(double A_t, double c, std::size_t m, std::size_t n);

/// a(m) S e^A Gamma(2 - rho) ((cA + 1)/c)^rho.
double asymptotic_bias(double s_value, double rho, double a_m, double A_t, double c);

/// Bias from a model carrying second-order constants.
double asymptotic_bias(const LimitModel& model, double t, double c);

struct ReferenceCurve {
  PickandsCurve curve;  // corrected, c = 1, oracle margins, with std_errors
  MovingMaxParams params;
  std::size_t big_m = 0;
  std::size_t reps = 0;
  std::uint64_t seed = 0;
};

/**
 * Monte Carlo reference for the Pickands function of the block-maxima limit
 * of the moving-maximum process. Draws `reps` independent blocks of size
 * `big_m` (block i uses rng.split(i)), applies the exact block-maximum
 * margins, and returns the boundary-corrected c = 1 madogram curve with
 * delta-method standard errors. Sums run in fixed pairwise order, so the
 * result does not depend on `workers`.
 */
ReferenceCurve reference_pickands_oracle(const MovingMaxParams& params, std::size_t big_m,
                                         std::size_t reps, std::span<const double> grid,
                                         std::uint64_t seed, unsigned workers = 0);

}  // namespace pickmad

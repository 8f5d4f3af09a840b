// Copyright 2026 The pickmad Authors
// SPDX-License-Identifier: Apache-2.0
#include "pickmad/theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "pickmad/block_estimators.hpp"
#include "pickmad/errors.hpp"
#include "pickmad/format.hpp"
#include "pickmad/numerics.hpp"

namespace pickmad {

namespace {

constexpr double kMadogramQuadratureTolerance = 1e-11;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw ParameterError(std::string(name) + " must be > 0, got " + format_double(value));
  }
}

}  // namespace

LimitModel::LimitModel(std::function<double(double)> pickands, std::string label)
    : pickands_(std::move(pickands)), label_(std::move(label)) {}

LimitModel LimitModel::from_copula(const CopulaSpec& spec) {
  return LimitModel([spec](double t) { return attractor_pickands(spec, t); },
                    "attractor of " + spec.describe());
}

LimitModel LimitModel::from_function(std::function<double(double)> pickands, std::string label) {
  if (!pickands) throw ParameterError("Pickands function is empty");
  const double a0 = pickands(0.0);
  const double a1 = pickands(1.0);
  if (std::abs(a0 - 1.0) > 1e-12 || std::abs(a1 - 1.0) > 1e-12) {
    throw ParameterError("Pickands function must equal 1 at t = 0 and t = 1");
  }
  return LimitModel(std::move(pickands), std::move(label));
}

LimitModel& LimitModel::with_second_order(SecondOrder so) {
  if (!(so.rho < 0.0)) throw ParameterError("second-order index rho must be < 0");
  require_positive(so.a_m, "second-order rate a(m)");
  second_order_ = so;
  return *this;
}

double extreme_copula_cdf(const LimitModel& model, double u, double v) {
  if (!(u >= 0.0 && u <= 1.0) || !(v >= 0.0 && v <= 1.0)) {
    throw DomainError("extreme copula argument outside the unit square");
  }
  if (u == 0.0 || v == 0.0) return 0.0;
  const double log_u = std::log(u);
  const double log_v = std::log(v);
  const double log_uv = log_u + log_v;
  if (log_uv == 0.0) return 1.0;
  return std::exp(log_uv * model.pickands(log_v / log_uv));
}

double true_madogram(const LimitModel& model, double t, double c) {
  require_positive(c, "madogram weight c");
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("madogram t=" + format_double(t) + " outside [0, 1]");
  const double e1 = c * (1.0 - t);
  const double e2 = c * t;
  auto integrand = [&](double y) {
    return extreme_copula_cdf(model, std::pow(y, e1), std::pow(y, e2));
  };
  const auto result = numerics::integrate(integrand, 0.0, 1.0, kMadogramQuadratureTolerance);
  return 1.0 - result.value;
}

double true_madogram_closed_form(const LimitModel& model, double t, double c) {
  require_positive(c, "madogram weight c");
  const double ca = c * model.pickands(t);
  return ca / (ca + 1.0);
}

double asymptotic_variance(double A_t, double c, std::size_t m, std::size_t n) {
  require_positive(c, "madogram weight c");
  if (!(A_t >= 0.5 - 1e-12 && A_t <= 1.0 + 1e-12)) {
    throw ParameterError("Pickands value A=" + format_double(A_t) + " outside [0.5, 1]");
  }
  if (m == 0 || m > n) throw ParameterError("asymptotic variance requires 1 <= m <= n");
  const double ratio = static_cast<double>(m) / static_cast<double>(n);
  const double ca = c * A_t;
  return ratio * (ca + 1.0) * (ca + 1.0) * A_t / (c * (ca + 2.0));
}

double asymptotic_bias(double s_value, double rho, double a_m, double A_t, double c) {
  require_positive(c, "madogram weight c");
  require_positive(a_m, "second-order rate a(m)");
  if (!(rho < 0.0)) throw ParameterError("second-order index rho must be < 0");
  return a_m * s_value * std::exp(A_t) * std::tgamma(2.0 - rho) *
         std::pow((c * A_t + 1.0) / c, rho);
}

double asymptotic_bias(const LimitModel& model, double t, double c) {
  const auto& so = model.second_order();
  if (!so) throw ParameterError("model '" + model.label() + "' carries no second-order constants");
  return asymptotic_bias(so->s_value, so->rho, so->a_m, model.pickands(t), c);
}

ReferenceCurve reference_pickands_oracle(const MovingMaxParams& params, std::size_t big_m,
                                         std::size_t reps, std::span<const double> grid,
                                         std::uint64_t seed, unsigned workers) {
  params.validate();
  validate_grid(grid);
  if (big_m == 0) throw ParameterError("reference block size must be >= 1");
  if (reps < 2) throw ParameterError("reference oracle needs at least 2 replicate blocks");
  if (grid.front() != 0.0 || grid.back() != 1.0) {
    throw ParameterError("reference grid must start at 0 and end at 1");
  }

  // Log-scale block maxima, one independent stream per replicate.
  const RandomStream root(seed);
  std::vector<BivariatePoint> log_blocks(reps);
  numerics::parallel_for(reps, workers, [&](std::size_t i) {
    RandomStream rng = root.split(i);
    log_blocks[i] = sample_log_block_maximum(params, big_m, rng);
  });

  // Oracle pseudo-observations log U_j = e_j * log M_j with F_m(x) = x^e_j.
  const double e1 = block_max_margin_exponent(params, 1, big_m);
  const double e2 = block_max_margin_exponent(params, 2, big_m);
  std::vector<double> lu1(reps);
  std::vector<double> lu2(reps);
  for (std::size_t i = 0; i < reps; ++i) {
    lu1[i] = e1 * log_blocks[i].x1;
    lu2[i] = e2 * log_blocks[i].x2;
  }

  auto terms_at = [&](double t, std::vector<double>& out) {
    for (std::size_t i = 0; i < reps; ++i) {
      const double a = (1.0 - t) == 0.0 ? (lu1[i] < 0.0 ? kNegInf : 0.0) : lu1[i] / (1.0 - t);
      const double b = t == 0.0 ? (lu2[i] < 0.0 ? kNegInf : 0.0) : lu2[i] / t;
      out[i] = std::exp(std::max(a, b));
    }
  };

  const double inv_reps = 1.0 / static_cast<double>(reps);
  std::vector<double> y0(reps);
  std::vector<double> y1(reps);
  std::vector<double> yt(reps);
  terms_at(0.0, y0);
  terms_at(1.0, y1);
  const double s0 = numerics::pairwise_sum(y0) * inv_reps;
  const double s1 = numerics::pairwise_sum(y1) * inv_reps;
  auto slope = [](double s) { return 1.0 / ((1.0 - s) * (1.0 - s)); };  // dA/dS at c = 1

  PickandsCurve raw;
  raw.grid.assign(grid.begin(), grid.end());
  raw.c = 1.0;
  raw.scheme = BlockScheme(BlockKind::Disjoint, big_m);
  raw.margin_mode = MarginMode::OracleMargin;
  std::vector<double> std_errors(grid.size(), 0.0);
  std::vector<double> influence(reps);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double t = grid[k];
    terms_at(t, yt);
    const double st = numerics::pairwise_sum(yt) * inv_reps;
    const auto a = pickands_from_madogram(st, 1.0);
    raw.values.push_back(a.value);
    raw.clamped = raw.clamped || a.clamped;
    // Linearised influence of each block on the corrected estimate.
    const double gt = slope(st);
    const double g0 = slope(s0);
    const double g1 = slope(s1);
    for (std::size_t i = 0; i < reps; ++i) {
      influence[i] = gt * yt[i] - (1.0 - t) * g0 * y0[i] - t * g1 * y1[i];
    }
    const double mean = numerics::pairwise_sum(influence) * inv_reps;
    for (double& h : influence) h = (h - mean) * (h - mean);
    const double var = numerics::pairwise_sum(influence) / static_cast<double>(reps - 1);
    std_errors[k] = (t == 0.0 || t == 1.0) ? 0.0 : std::sqrt(var * inv_reps);
  }

  ReferenceCurve out;
  out.curve = boundary_correct(raw);
  out.curve.std_errors = std::move(std_errors);
  out.params = params;
  out.big_m = big_m;
  out.reps = reps;
  out.seed = seed;
  return out;
}

}  // namespace pickmad

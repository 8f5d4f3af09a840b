// Copyright 2026 The pickmad Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Independent reference computations used by the test suites. Each one is
// written against definitions, not against the library's code paths.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/special_functions/owens_t.hpp>

#include "pickmad/block_estimators.hpp"

namespace pickmad::testing {

/// sup |F_n(x) - x| of a sample against Uniform(0, 1).
inline double ks_uniform(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    d = std::max({d, (static_cast<double>(i) + 1.0) / n - xs[i], xs[i] - static_cast<double>(i) / n});
  }
  return d;
}

/// Average ranks, 1-based.
inline std::vector<double> average_ranks(const std::vector<double>& x) {
  std::vector<std::size_t> idx(x.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](auto i, auto j) { return x[i] < x[j]; });
  std::vector<double> r(x.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && x[idx[j + 1]] == x[idx[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) r[idx[k]] = avg;
    i = j + 1;
  }
  return r;
}

/// Spearman rank correlation (Pearson correlation of average ranks).
inline double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

/**
 * int_0^1 Chat(y^p, y^q) w(y) dy for the empirical copula of `pseudo`, with
 * W an antiderivative of the weight w. Chat(y^p, y^q) is a step function of
 * y whose jumps sit at U1^(1/p) and U2^(1/q); between consecutive jump
 * points it is evaluated once at the midpoint through the counting
 * definition, so the result is exact up to rounding.
 */
template <class Antiderivative>
double step_copula_integral(const BlockPseudoObservations& pseudo, double p, double q,
                            Antiderivative&& W) {
  std::vector<double> cuts{0.0, 1.0};
  for (const auto& pt : pseudo.pairs) {
    cuts.push_back(std::pow(pt.x1, 1.0 / p));
    cuts.push_back(std::pow(pt.x2, 1.0 / q));
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double lo = cuts[k];
    const double hi = cuts[k + 1];
    if (!(hi > lo)) continue;
    const double mid = 0.5 * (lo + hi);
    const double level = empirical_copula(pseudo, std::pow(mid, p), std::pow(mid, q));
    total += level * (W(hi) - W(lo));
  }
  return total;
}

/// 1 - int_0^1 Chat(y^(c(1-t)), y^(ct)) dy, t strictly inside (0, 1).
inline double madogram_by_quadrature(const BlockPseudoObservations& pseudo, double t, double c) {
  return 1.0 - step_copula_integral(pseudo, c * (1.0 - t), c * t, [](double y) { return y; });
}

/// Bivariate standard normal CDF with correlation rho through Owen's T;
/// h and k both zero or both nonzero.
inline double bivariate_normal_cdf(double h, double k, double rho) {
  const boost::math::normal_distribution<double> nd;
  const double s = std::sqrt(1.0 - rho * rho);
  const double ph = boost::math::cdf(nd, h);
  const double pk = boost::math::cdf(nd, k);
  if (h == 0.0 && k == 0.0) return 0.25 + std::asin(rho) / (2.0 * std::numbers::pi);
  auto owen = [&](double a, double b) { return boost::math::owens_t(a, (b - rho * a) / (a * s)); };
  double value = 0.5 * ph + 0.5 * pk - owen(h, k) - owen(k, h);
  if (h * k < 0.0) value -= 0.5;
  return value;
}

}  // namespace pickmad::testing

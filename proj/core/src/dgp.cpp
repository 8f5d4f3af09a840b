// Copyright 2026 The pickmad Authors
// SPDX-License-Identifier: Apache-2.0
#include "pickmad/dgp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pickmad/errors.hpp"
#include "pickmad/format.hpp"

namespace pickmad {

void MovingMaxParams::validate() const {
  if (!(a > 0.0 && a < 1.0)) throw ParameterError("moving-max a must lie in (0, 1), got " + format_double(a));
  if (!(b > 0.0 && b < 1.0)) throw ParameterError("moving-max b must lie in (0, 1), got " + format_double(b));
}

MovingMaxParams MovingMaxParams::standard(CopulaSpec innovation) {
  return MovingMaxParams{0.25, 0.5, std::move(innovation)};
}

BivariateSeries::BivariateSeries(std::vector<BivariatePoint> observations)
    : observations_(std::move(observations)) {
  if (observations_.empty()) throw InputError("bivariate series must contain at least one row");
  for (std::size_t i = 0; i < observations_.size(); ++i) {
    if (!std::isfinite(observations_[i].x1) || !std::isfinite(observations_[i].x2)) {
      std::ostringstream msg;
      msg << "non-finite value in observation " << i;
      throw InputError(msg.str());
    }
  }
}

std::vector<double> BivariateSeries::coordinate(int which) const {
  std::vector<double> out;
  out.reserve(observations_.size());
  for (const auto& p : observations_) out.push_back(which == 1 ? p.x1 : p.x2);
  return out;
}

BivariateSeries simulate_moving_max(const MovingMaxParams& params, std::size_t n,
                                    RandomStream& rng) {
  params.validate();
  if (n == 0) throw ParameterError("series length n must be >= 1");
  const double inv_a = 1.0 / params.a;
  const double inv_1a = 1.0 / (1.0 - params.a);
  const double inv_b = 1.0 / params.b;
  const double inv_1b = 1.0 / (1.0 - params.b);

  std::vector<BivariatePoint> xs;
  xs.reserve(n);
  BivariatePoint previous = sample_one(params.innovation, rng);
  for (std::size_t t = 1; t <= n; ++t) {
    const BivariatePoint current = sample_one(params.innovation, rng);
    xs.push_back({std::max(std::pow(current.x1, inv_a), std::pow(previous.x1, inv_1a)),
                  std::max(std::pow(current.x2, inv_b), std::pow(previous.x2, inv_1b))});
    previous = current;
  }
  return BivariateSeries(std::move(xs));
}

double block_max_margin_exponent(const MovingMaxParams& params, int coordinate, std::size_t m) {
  params.validate();
  if (coordinate != 1 && coordinate != 2) throw ParameterError("coordinate must be 1 or 2");
  if (m == 0) throw ParameterError("block size m must be >= 1");
  const double g = coordinate == 1 ? params.a : params.b;
  return g + static_cast<double>(m - 1) * std::max(g, 1.0 - g) + (1.0 - g);
}

double block_max_margin_cdf(const MovingMaxParams& params, int coordinate, std::size_t m,
                            double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError("block-maximum margin argument x=" + format_double(x) + " outside [0, 1]");
  }
  return std::pow(x, block_max_margin_exponent(params, coordinate, m));
}

BivariatePoint sample_log_block_maximum(const MovingMaxParams& params, std::size_t m,
                                        RandomStream& rng) {
  params.validate();
  if (m == 0) throw ParameterError("block size m must be >= 1");
  // W_0 enters only through X_1 with exponent 1/(1-g); W_m only through X_m
  // with exponent 1/g; each interior W_t through max(W^(1/g), W^(1/(1-g))).
  const BivariatePoint first = sample_one(params.innovation, rng);
  const BivariatePoint last = sample_one(params.innovation, rng);
  double l1 = std::max(std::log(first.x1) / (1.0 - params.a), std::log(last.x1) / params.a);
  double l2 = std::max(std::log(first.x2) / (1.0 - params.b), std::log(last.x2) / params.b);
  if (m > 1) {
    const BivariatePoint inner = sample_log_maximum(params.innovation, m - 1, rng);
    l1 = std::max(l1, inner.x1 / std::max(params.a, 1.0 - params.a));
    l2 = std::max(l2, inner.x2 / std::max(params.b, 1.0 - params.b));
  }
  return {l1, l2};
}

}  // namespace pickmad

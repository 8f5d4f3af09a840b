// Copyright 2026 The pickmad Authors
// SPDX-License-Identifier: Apache-2.0
#include "pickmad/madogram.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pickmad/errors.hpp"
#include "pickmad/format.hpp"

namespace pickmad {

namespace {

void require_positive_c(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw ParameterError("madogram weight c must be > 0, got " + format_double(c));
  }
}

// log(U^(1/d)) with the d -> 0 limit: 0 when U = 1, -inf otherwise.
inline double scaled_log(double log_u, double d) {
  if (d == 0.0) return log_u < 0.0 ? -std::numeric_limits<double>::infinity() : 0.0;
  return log_u / d;
}

struct LogPseudo {
  std::vector<double> l1;
  std::vector<double> l2;
};

LogPseudo to_logs(const BlockPseudoObservations& pseudo) {
  if (pseudo.pairs.empty()) throw ParameterError("madogram of an empty pseudo-observation set");
  LogPseudo out;
  out.l1.reserve(pseudo.pairs.size());
  out.l2.reserve(pseudo.pairs.size());
  for (const auto& p : pseudo.pairs) {
    out.l1.push_back(std::log(p.x1));
    out.l2.push_back(std::log(p.x2));
  }
  return out;
}

double madogram_from_logs(const LogPseudo& logs, double t, double c) {
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("madogram t=" + format_double(t) + " outside [0, 1]");
  const double d1 = c * (1.0 - t);
  const double d2 = c * t;
  double sum = 0.0;
  const std::size_t b = logs.l1.size();
  for (std::size_t i = 0; i < b; ++i) {
    sum += std::exp(std::max(scaled_log(logs.l1[i], d1), scaled_log(logs.l2[i], d2)));
  }
  return sum / static_cast<double>(b);
}

}  // namespace

std::vector<double> default_grid(std::size_t T) {
  if (T < 2) throw ParameterError("grid size T must be >= 2");
  std::vector<double> grid(T);
  for (std::size_t k = 0; k < T; ++k) {
    grid[k] = static_cast<double>(k) / static_cast<double>(T - 1);
  }
  return grid;
}

void validate_grid(std::span<const double> grid) {
  if (grid.empty()) throw ParameterError("t-grid is empty");
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (!(grid[k] >= 0.0 && grid[k] <= 1.0)) {
      throw ParameterError("t-grid value " + format_double(grid[k]) + " outside [0, 1]");
    }
    if (k > 0 && !(grid[k] > grid[k - 1])) throw ParameterError("t-grid is not strictly increasing");
  }
}

double madogram_estimate(const BlockPseudoObservations& pseudo, double t, double c) {
  require_positive_c(c);
  return madogram_from_logs(to_logs(pseudo), t, c);
}

std::vector<double> madogram_curve(const BlockPseudoObservations& pseudo,
                                   std::span<const double> grid, double c) {
  require_positive_c(c);
  const LogPseudo logs = to_logs(pseudo);
  std::vector<double> out;
  out.reserve(grid.size());
  for (double t : grid) out.push_back(madogram_from_logs(logs, t, c));
  return out;
}

PickandsValue pickands_from_madogram(double S, double c) {
  require_positive_c(c);
  if (!(S >= 0.0)) throw DomainError("madogram value S=" + format_double(S) + " must be >= 0");
  bool clamped = false;
  if (S >= 1.0 - kMadogramClamp) {
    S = 1.0 - kMadogramClamp;
    clamped = true;
  }
  return {(1.0 / (1.0 - S) - 1.0) / c, clamped};
}

PickandsCurve pickands_curve(const BlockPseudoObservations& pseudo, std::span<const double> grid,
                             double c) {
  validate_grid(grid);
  PickandsCurve curve;
  curve.grid.assign(grid.begin(), grid.end());
  curve.c = c;
  curve.scheme = pseudo.scheme;
  curve.margin_mode = pseudo.margin_mode;
  const auto s = madogram_curve(pseudo, grid, c);
  curve.values.reserve(s.size());
  for (double sv : s) {
    const auto a = pickands_from_madogram(sv, c);
    curve.values.push_back(a.value);
    curve.clamped = curve.clamped || a.clamped;
  }
  return curve;
}

PickandsCurve estimate_pickands_curve(const BivariateSeries& series, const BlockScheme& scheme,
                                      double c, std::span<const double> grid, MarginMode mode,
                                      const std::optional<OracleMargins>& margins) {
  require_positive_c(c);
  validate_grid(grid);
  const auto blocks = block_maxima(series, scheme);
  if (mode == MarginMode::RankBased) return pickands_curve(rank_transform(blocks, scheme), grid, c);
  if (!margins) throw ParameterError("oracle-margin estimation requires margin CDFs");
  return pickands_curve(oracle_transform(blocks, scheme, margins->first, margins->second), grid, c);
}

PickandsCurve boundary_correct(const PickandsCurve& curve) {
  const auto& g = curve.grid;
  const auto lo = std::find(g.begin(), g.end(), 0.0);
  const auto hi = std::find(g.begin(), g.end(), 1.0);
  if (lo == g.end() || hi == g.end()) {
    throw ParameterError("boundary correction needs t = 0 and t = 1 on the grid");
  }
  const double a0 = curve.values[static_cast<std::size_t>(lo - g.begin())];
  const double a1 = curve.values[static_cast<std::size_t>(hi - g.begin())];
  PickandsCurve out = curve;
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double t = g[k];
    if (t == 0.0 || t == 1.0) {
      out.values[k] = 1.0;
    } else {
      out.values[k] = curve.values[k] - (1.0 - t) * (a0 - 1.0) - t * (a1 - 1.0);
    }
  }
  out.corrected = true;
  return out;
}

}  // namespace pickmad

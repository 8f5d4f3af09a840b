// Copyright 2026 The pickmad Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Weighted madogram estimator S(t, c) of block-maxima pseudo-observations
// and its Pickands dependence function estimate
//   A(t) = (1/c) * (1 / (1 - S(t, c)) - 1).
// Smaller c puts more weight on the joint upper tail.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "pickmad/block_estimators.hpp"
#include "pickmad/dgp.hpp"

namespace pickmad {

struct PickandsCurve {
  std::vector<double> grid;
  std::vector<double> values;
  /// Per-point standard errors; empty unless produced by a reference oracle.
  std::vector<double> std_errors;
  double c = 1.0;
  BlockScheme scheme{BlockKind::Disjoint, 1};
  MarginMode margin_mode = MarginMode::RankBased;
  bool corrected = false;
  /// True when some S(t, c) hit the 1 - 1e-12 clamp (degenerate block set).
  bool clamped = false;
};

/// t_k = k / (T - 1), k = 0..T-1. T must be >= 2.
std::vector<double> default_grid(std::size_t T = 51);

/// Throws ParameterError unless the grid is non-empty, strictly increasing
/// and inside [0, 1].
void validate_grid(std::span<const double> grid);

/**
 * S(t, c) = (1/b) sum_i max(U_i1^(1/(c(1-t))), U_i2^(1/(ct))).
 * At t = 0 (resp. 1) the infinite power is its pointwise limit: 1 when
 * U = 1, else 0. Blocks are summed in index order.
 */
double madogram_estimate(const BlockPseudoObservations& pseudo, double t, double c);

/// madogram_estimate over a whole grid; bitwise equal to calling it per t.
std::vector<double> madogram_curve(const BlockPseudoObservations& pseudo,
                                   std::span<const double> grid, double c);

struct PickandsValue {
  double value;
  bool clamped;
};

inline constexpr double kMadogramClamp = 1e-12;

/// (1/c)(1/(1 - S) - 1). S >= 1 - 1e-12 is clamped and reported.
PickandsValue pickands_from_madogram(double S, double c);

/// Uncorrected Pickands curve from pseudo-observations.
PickandsCurve pickands_curve(const BlockPseudoObservations& pseudo, std::span<const double> grid,
                             double c);

struct OracleMargins {
  MarginCdf first;
  MarginCdf second;
};

/// block_maxima -> rank or oracle transform -> madogram -> Pickands.
/// OracleMargin mode requires `margins`.
PickandsCurve estimate_pickands_curve(const BivariateSeries& series, const BlockScheme& scheme,
                                      double c, std::span<const double> grid, MarginMode mode,
                                      const std::optional<OracleMargins>& margins = std::nullopt);

/// A(t) - (1 - t)(A(0) - 1) - t(A(1) - 1); endpoints become exactly 1.
PickandsCurve boundary_correct(const PickandsCurve& curve);

}  // namespace pickmad

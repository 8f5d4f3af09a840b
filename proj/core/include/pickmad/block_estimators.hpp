// Copyright 2026 The pickmad Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pickmad/dgp.hpp"
#include "pickmad/types.hpp"

namespace pickmad {

enum class BlockKind { Disjoint, Sliding };

std::string_view to_string(BlockKind kind);
/// Parses "disjoint" / "sliding"; throws ParameterError otherwise.
BlockKind parse_block_kind(std::string_view text);

/// Block layout of size m. Disjoint: floor(n/m) blocks, remainder dropped.
/// Sliding: n - m + 1 overlapping windows.
class BlockScheme {
 public:
  BlockScheme(BlockKind kind, std::size_t m);

  [[nodiscard]] BlockKind kind() const noexcept { return kind_; }
  [[nodiscard]] std::size_t block_size() const noexcept { return m_; }
  /// Throws ParameterError when m > n.
  [[nodiscard]] std::size_t block_count(std::size_t n) const;

  friend bool operator==(const BlockScheme&, const BlockScheme&) = default;

 private:
  BlockKind kind_;
  std::size_t m_;
};

enum class MarginMode { RankBased, OracleMargin };

std::string_view to_string(MarginMode mode);

struct BlockPseudoObservations {
  std::vector<BivariatePoint> pairs;
  BlockScheme scheme;
  MarginMode margin_mode;
};

/// Coordinatewise block maxima; one pair per block, in block order.
std::vector<BivariatePoint> block_maxima(const BivariateSeries& series, const BlockScheme& scheme);

/// Running maximum over every window of length m (monotone deque, O(n)).
std::vector<double> sliding_window_max(std::span<const double> values, std::size_t m);

/**
 * Empirical-CDF transform of each coordinate: U_ij = #{k : M_kj <= M_ij} / b.
 * Ties receive the largest rank. Values lie in {1/b, ..., 1}.
 */
BlockPseudoObservations rank_transform(std::span<const BivariatePoint> blocks,
                                       const BlockScheme& scheme);

/// A continuous CDF on [lower, upper]. Construction probes the function and
/// rejects anything that is not nondecreasing from 0 at `lower` to 1 at
/// `upper` (e.g. a constant).
class MarginCdf {
 public:
  MarginCdf(std::function<double(double)> cdf, double lower = 0.0, double upper = 1.0);

  double operator()(double x) const { return cdf_(x); }

  /// Identity margin on [0, 1].
  static MarginCdf uniform();
  /// Exact block-maximum margin of the moving-maximum process.
  static MarginCdf block_maximum(const MovingMaxParams& params, int coordinate, std::size_t m);

 private:
  std::function<double(double)> cdf_;
};

/// Applies known margin CDFs to the block maxima (oracle pseudo-observations).
BlockPseudoObservations oracle_transform(std::span<const BivariatePoint> blocks,
                                         const BlockScheme& scheme, const MarginCdf& margin1,
                                         const MarginCdf& margin2);

/// Fraction of pseudo-observations with U1 <= u and U2 <= v.
double empirical_copula(const BlockPseudoObservations& pseudo, double u, double v);

}  // namespace pickmad

// Copyright 2026 The pickmad Authors
// SPDX-License-Identifier: Apache-2.0
#include "pickmad/block_estimators.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <sstream>

#include "pickmad/errors.hpp"
#include "pickmad/format.hpp"

namespace pickmad {

std::string_view to_string(BlockKind kind) {
  return kind == BlockKind::Disjoint ? "disjoint" : "sliding";
}

BlockKind parse_block_kind(std::string_view text) {
  if (text == "disjoint") return BlockKind::Disjoint;
  if (text == "sliding") return BlockKind::Sliding;
  throw ParameterError("unknown block scheme '" + std::string(text) +
                       "' (expected disjoint|sliding)");
}

std::string_view to_string(MarginMode mode) {
  return mode == MarginMode::RankBased ? "rank" : "oracle";
}

BlockScheme::BlockScheme(BlockKind kind, std::size_t m) : kind_(kind), m_(m) {
  if (m == 0) throw ParameterError("block size m must be >= 1");
}

std::size_t BlockScheme::block_count(std::size_t n) const {
  if (m_ > n) {
    std::ostringstream msg;
    msg << "block size m=" << m_ << " exceeds series length n=" << n;
    throw ParameterError(msg.str());
  }
  return kind_ == BlockKind::Disjoint ? n / m_ : n - m_ + 1;
}

std::vector<double> sliding_window_max(std::span<const double> values, std::size_t m) {
  if (m == 0 || m > values.size()) {
    throw ParameterError("sliding window size must lie in [1, n]");
  }
  std::vector<double> out;
  out.reserve(values.size() - m + 1);
  std::deque<std::size_t> window;  // indices with decreasing values
  for (std::size_t i = 0; i < values.size(); ++i) {
    while (!window.empty() && values[window.back()] <= values[i]) window.pop_back();
    window.push_back(i);
    if (window.front() + m <= i) window.pop_front();
    if (i + 1 >= m) out.push_back(values[window.front()]);
  }
  return out;
}

std::vector<BivariatePoint> block_maxima(const BivariateSeries& series, const BlockScheme& scheme) {
  const std::size_t n = series.size();
  const std::size_t count = scheme.block_count(n);
  const std::size_t m = scheme.block_size();
  std::vector<BivariatePoint> out;
  out.reserve(count);
  if (scheme.kind() == BlockKind::Disjoint) {
    const auto obs = series.observations();
    for (std::size_t i = 0; i < count; ++i) {
      BivariatePoint mx = obs[i * m];
      for (std::size_t t = i * m + 1; t < (i + 1) * m; ++t) {
        mx.x1 = std::max(mx.x1, obs[t].x1);
        mx.x2 = std::max(mx.x2, obs[t].x2);
      }
      out.push_back(mx);
    }
    return out;
  }
  const auto c1 = sliding_window_max(series.coordinate(1), m);
  const auto c2 = sliding_window_max(series.coordinate(2), m);
  for (std::size_t i = 0; i < count; ++i) out.push_back({c1[i], c2[i]});
  return out;
}

namespace {

// Max-rank ECDF of one coordinate evaluated at each of its own values.
std::vector<double> ecdf_at_self(const std::vector<double>& values) {
  const std::size_t b = values.size();
  std::vector<double> sorted(values);
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> out(b);
  const double inv_b = 1.0 / static_cast<double>(b);
  for (std::size_t i = 0; i < b; ++i) {
    const auto rank = std::upper_bound(sorted.begin(), sorted.end(), values[i]) - sorted.begin();
    out[i] = static_cast<double>(rank) * inv_b;
  }
  return out;
}

}  // namespace

BlockPseudoObservations rank_transform(std::span<const BivariatePoint> blocks,
                                       const BlockScheme& scheme) {
  if (blocks.empty()) throw ParameterError("rank transform needs at least one block");
  std::vector<double> c1;
  std::vector<double> c2;
  c1.reserve(blocks.size());
  c2.reserve(blocks.size());
  for (const auto& p : blocks) {
    c1.push_back(p.x1);
    c2.push_back(p.x2);
  }
  const auto u1 = ecdf_at_self(c1);
  const auto u2 = ecdf_at_self(c2);
  BlockPseudoObservations out{{}, scheme, MarginMode::RankBased};
  out.pairs.reserve(blocks.size());
  for (std::size_t i = 0; i < blocks.size(); ++i) out.pairs.push_back({u1[i], u2[i]});
  return out;
}

MarginCdf::MarginCdf(std::function<double(double)> cdf, double lower, double upper)
    : cdf_(std::move(cdf)) {
  if (!cdf_) throw ParameterError("margin CDF is empty");
  if (!(lower < upper)) throw ParameterError("margin CDF support must satisfy lower < upper");
  constexpr int kProbes = 256;
  constexpr double kEndTolerance = 1e-12;
  double previous = cdf_(lower);
  if (!(std::abs(previous) <= kEndTolerance)) {
    throw ParameterError("margin CDF must equal 0 at the lower support bound, got " +
                         format_double(previous));
  }
  for (int i = 1; i <= kProbes; ++i) {
    const double x = lower + (upper - lower) * static_cast<double>(i) / kProbes;
    const double value = cdf_(x);
    if (!(value >= 0.0 && value <= 1.0) || value < previous) {
      throw ParameterError("margin CDF is not a nondecreasing map into [0, 1] (at x=" +
                           format_double(x) + ")");
    }
    previous = value;
  }
  if (!(std::abs(previous - 1.0) <= kEndTolerance)) {
    throw ParameterError("margin CDF must equal 1 at the upper support bound, got " +
                         format_double(previous));
  }
}

MarginCdf MarginCdf::uniform() {
  return MarginCdf([](double x) { return std::clamp(x, 0.0, 1.0); });
}

MarginCdf MarginCdf::block_maximum(const MovingMaxParams& params, int coordinate, std::size_t m) {
  const double exponent = block_max_margin_exponent(params, coordinate, m);
  return MarginCdf([exponent](double x) {
    if (!(x >= 0.0 && x <= 1.0)) {
      throw DomainError("block-maximum margin argument x=" + format_double(x) + " outside [0, 1]");
    }
    return std::pow(x, exponent);
  });
}

BlockPseudoObservations oracle_transform(std::span<const BivariatePoint> blocks,
                                         const BlockScheme& scheme, const MarginCdf& margin1,
                                         const MarginCdf& margin2) {
  if (blocks.empty()) throw ParameterError("oracle transform needs at least one block");
  BlockPseudoObservations out{{}, scheme, MarginMode::OracleMargin};
  out.pairs.reserve(blocks.size());
  for (const auto& p : blocks) out.pairs.push_back({margin1(p.x1), margin2(p.x2)});
  return out;
}

double empirical_copula(const BlockPseudoObservations& pseudo, double u, double v) {
  if (!(u >= 0.0 && u <= 1.0) || !(v >= 0.0 && v <= 1.0)) {
    throw DomainError("empirical copula argument outside the unit square");
  }
  if (pseudo.pairs.empty()) throw ParameterError("empirical copula of an empty sample");
  const auto hits = std::count_if(pseudo.pairs.begin(), pseudo.pairs.end(),
                                  [&](const BivariatePoint& p) { return p.x1 <= u && p.x2 <= v; });
  return static_cast<double>(hits) / static_cast<double>(pseudo.pairs.size());
}

}  // namespace pickmad

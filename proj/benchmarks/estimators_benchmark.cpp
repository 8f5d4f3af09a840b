// Copyright 2026 The pickmad Authors
// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include <vector>

#include "pickmad/block_estimators.hpp"
#include "pickmad/dgp.hpp"
#include "pickmad/madogram.hpp"

namespace {

using namespace pickmad;

BivariateSeries standard_series(std::size_t n) {
  RandomStream rng(7);
  return simulate_moving_max(MovingMaxParams{}, n, rng);
}

void BM_SlidingWindowMax(benchmark::State& state) {
  const auto series = standard_series(static_cast<std::size_t>(state.range(0)));
  const auto values = series.coordinate(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sliding_window_max(values, 30));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SlidingWindowMax)->Arg(1000)->Arg(100000);

void BM_RankTransform(benchmark::State& state) {
  const auto series = standard_series(static_cast<std::size_t>(state.range(0)));
  const BlockScheme scheme(BlockKind::Sliding, 10);
  const auto blocks = block_maxima(series, scheme);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rank_transform(blocks, scheme));
  }
}
BENCHMARK(BM_RankTransform)->Arg(1000)->Arg(100000);

void BM_PickandsCurve(benchmark::State& state) {
  const auto series = standard_series(1000);
  const auto grid = default_grid(51);
  const BlockKind kind = state.range(0) == 0 ? BlockKind::Disjoint : BlockKind::Sliding;
  const BlockScheme scheme(kind, 10);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        boundary_correct(estimate_pickands_curve(series, scheme, 1.0, grid, MarginMode::RankBased)));
  }
}
BENCHMARK(BM_PickandsCurve)->Arg(0)->Arg(1);

}  // namespace

// Copyright 2026 The pickmad Authors
// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include <string>

#include "pickmad/copula_models.hpp"
#include "pickmad/dgp.hpp"
#include "pickmad/madogram.hpp"
#include "pickmad/theory.hpp"

namespace {

using namespace pickmad;

const char* const kTags[] = {"opclayton", "t4", "gaussian"};

void BM_SimulateMovingMax(benchmark::State& state) {
  const auto params = MovingMaxParams::standard(CopulaSpec::from_tag(kTags[state.range(0)]));
  RandomStream rng(11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate_moving_max(params, 1000, rng));
  }
  state.SetLabel(kTags[state.range(0)]);
}
BENCHMARK(BM_SimulateMovingMax)->DenseRange(0, 2);

void BM_CopulaCdf(benchmark::State& state) {
  const auto spec = CopulaSpec::from_tag(kTags[state.range(0)]);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cdf(spec, 0.37, 0.81));
  }
  state.SetLabel(kTags[state.range(0)]);
}
BENCHMARK(BM_CopulaCdf)->DenseRange(0, 2);

void BM_ReferenceOracle(benchmark::State& state) {
  const auto params = MovingMaxParams::standard(CopulaSpec::from_tag(kTags[state.range(0)]));
  const auto grid = default_grid(51);
  for (auto _ : state) {
    benchmark::DoNotOptimize(reference_pickands_oracle(params, 1000, 2000, grid, 1, 1));
  }
  state.SetLabel(kTags[state.range(0)]);
}
BENCHMARK(BM_ReferenceOracle)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

}  // namespace

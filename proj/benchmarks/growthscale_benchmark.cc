// Copyright 2026 The growthscale Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <vector>

#include <benchmark/benchmark.h>

#include "growthscale/aep.h"
#include "growthscale/aep_fit.h"
#include "growthscale/scaling.h"
#include "growthscale/synth.h"

namespace growthscale {
namespace {

const AepParams kParams{0.912, 1.377, 0.024, 0.026, 0.022};

void BM_LogDensity(benchmark::State& state) {
  const auto x = Sample(kParams, 4096, 1);
  for (auto _ : state) {
    double sum = 0.0;
    for (double v : x) sum += LogDensity(v, kParams);
    benchmark::DoNotOptimize(sum);
  }
  state.SetItemsProcessed(state.iterations() * x.size());
}
BENCHMARK(BM_LogDensity);

void BM_FitAep(benchmark::State& state) {
  const auto x = Sample(kParams, state.range(0), 2);
  for (auto _ : state) benchmark::DoNotOptimize(FitAep(x));
}
BENCHMARK(BM_FitAep)->Arg(1550)->Arg(5000)->Unit(benchmark::kMillisecond);

void BM_BinnedBeta(benchmark::State& state) {
  const GrowthPanel panel = Generate(SynthSpec{});
  for (auto _ : state) benchmark::DoNotOptimize(BinnedBeta(panel));
}
BENCHMARK(BM_BinnedBeta)->Unit(benchmark::kMicrosecond);

void BM_EstimateAlad(benchmark::State& state) {
  const auto pairs = BuildLagPairs(Generate(SynthSpec{}));
  for (auto _ : state) benchmark::DoNotOptimize(EstimateAlad(pairs));
}
BENCHMARK(BM_EstimateAlad)->Unit(benchmark::kMillisecond);

void BM_FitAlad(benchmark::State& state) {
  const GrowthPanel panel = Generate(SynthSpec{});
  AladOptions options;
  options.bootstrap = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(FitAlad(panel, options));
}
BENCHMARK(BM_FitAlad)->Arg(50)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace growthscale

BENCHMARK_MAIN();

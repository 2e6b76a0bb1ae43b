//  Copyright 2026 The modeest Authors
//
//  Licensed under the Apache License, Version 2.0 (the "License");
//  you may not use this file except in compliance with the License.
//  You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.

// Serial reference vs OpenMP trial loop on the same experiment.

#include <benchmark/benchmark.h>

#include "modeest/harness.hpp"

namespace {

modeest::ExperimentConfig experiment(modeest::Model model) {
  modeest::ExperimentConfig c;
  c.model = model;
  c.distribution = modeest::DistributionSpec::geometric(64, 0.5, 0.292);
  c.delta = 0.1;
  c.trials = 64;
  return c;
}

void BM_Serial(benchmark::State& state, modeest::Model model) {
  const auto c = experiment(model);
  for (auto _ : state) benchmark::DoNotOptimize(modeest::run_trials_serial(c).mean_queries);
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(c.trials));
}

void BM_Parallel(benchmark::State& state, modeest::Model model) {
  auto c = experiment(model);
  c.jobs = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(modeest::run_trials(c).mean_queries);
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(c.trials));
}

}  // namespace

BENCHMARK_CAPTURE(BM_Serial, qm1, modeest::Model::kQm1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(BM_Parallel, qm1, modeest::Model::kQm1)
    ->Arg(2)->Arg(4)->Arg(0)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(BM_Serial, qm2, modeest::Model::kQm2)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(BM_Parallel, qm2, modeest::Model::kQm2)
    ->Arg(2)->Arg(4)->Arg(0)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(BM_Serial, qm2_naive, modeest::Model::kQm2Naive)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(BM_Parallel, qm2_naive, modeest::Model::kQm2Naive)
    ->Arg(2)->Arg(4)->Arg(0)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();

// Copyright 2026 The gmpe-ann Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Micro benchmarks for the forward pass, the Jacobian and one short
// Levenberg-Marquardt fit. Build in Release; results scale with H.

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "gmpe_ann/analysis.hpp"
#include "gmpe_ann/network.hpp"
#include "gmpe_ann/trainer.hpp"

namespace {

using namespace gmpe_ann;

std::vector<GroundMotionRecord> make_catalog(std::size_t n) {
  std::mt19937_64 gen(42);
  std::uniform_real_distribution<double> mw(3.0, 5.8), vs(180.0, 1500.0),
      lr(std::log(4.0), std::log(500.0));
  const NetworkModel pga = published_model(Target::kPga);
  const NetworkModel pgv = published_model(Target::kPgv);
  std::vector<GroundMotionRecord> out;
  for (std::size_t i = 0; i < n; ++i) {
    GroundMotionRecord r;
    r.event_id = "e";
    r.station_id = "s";
    r.magnitude = mw(gen);
    r.vs30 = vs(gen);
    r.rjb = std::exp(lr(gen));
    r.pga = forward(pga, r.scenario()).value;
    r.pgv = forward(pgv, r.scenario()).value;
    out.push_back(r);
  }
  return out;
}

void BM_Forward(benchmark::State& state) {
  const NetworkModel m = published_model(Target::kPga);
  const Scenario s{4.0, 760.0, 20.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(forward(m, s));
  }
}
BENCHMARK(BM_Forward);

void BM_ForwardNormalizedLog(benchmark::State& state) {
  const NetworkModel m = published_model(Target::kPga);
  const auto x = m.normalization().normalize({4.0, 760.0, 20.0});
  for (auto _ : state) {
    benchmark::DoNotOptimize(forward_normalized_log(m, x));
  }
}
BENCHMARK(BM_ForwardNormalizedLog);

void BM_Jacobian(benchmark::State& state) {
  const auto records = make_catalog(static_cast<std::size_t>(state.range(0)));
  const NetworkModel m = published_model(Target::kPga);
  for (auto _ : state) {
    benchmark::DoNotOptimize(jacobian(m, records));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Jacobian)->Arg(100)->Arg(1000)->Arg(4529);

void BM_Train(benchmark::State& state) {
  const auto records = make_catalog(2000);
  TrainConfig config;
  config.hidden_count = static_cast<std::size_t>(state.range(0));
  config.max_iterations = 50;
  for (auto _ : state) {
    benchmark::DoNotOptimize(train(records, Target::kPga, config, SplitSpec{}));
  }
}
BENCHMARK(BM_Train)->Arg(1)->Arg(4)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_Garson(benchmark::State& state) {
  const NetworkModel m = published_model(Target::kPgv);
  for (auto _ : state) {
    benchmark::DoNotOptimize(garson_importance(m));
  }
}
BENCHMARK(BM_Garson);

}  // namespace

BENCHMARK_MAIN();

// Copyright 2026 The seqbell Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <numbers>
#include <random>

#include "seqbell/chsh.hpp"
#include "seqbell/experiment.hpp"
#include "seqbell/lhv.hpp"
#include "seqbell/polytope.hpp"
#include "seqbell/quantum.hpp"

namespace {

using namespace seqbell;
using std::numbers::pi;

void BM_QuantumJoint(benchmark::State& state) {
  const auto mode = static_cast<JointMode>(state.range(0));
  double a = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(quantum_joint(Angle(a), Angle(0.7), mode));
    a += 1e-3;
  }
}
BENCHMARK(BM_QuantumJoint)
    ->Arg(static_cast<int>(JointMode::kClosedForm))
    ->Arg(static_cast<int>(JointMode::kAmplitude));

// Trials per second of the sharded Monte Carlo driver.
void BM_MonteCarloRun(benchmark::State& state) {
  const DetectionConfig cfg{0.9, 0.8, 1.0, 1.0};
  const auto n = static_cast<std::uint64_t>(state.range(0));
  const unsigned threads = static_cast<unsigned>(state.range(1));
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        run(Angle(pi / 4), Angle(0), cfg, n, seed++, {threads}));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_MonteCarloRun)
    ->Args({1 << 20, 1})
    ->Args({1 << 20, 0})
    ->Unit(benchmark::kMillisecond);

void BM_PolytopeCheck(benchmark::State& state) {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(polytope_check({u(gen), u(gen), u(gen), u(gen)}));
  }
}
BENCHMARK(BM_PolytopeCheck);

void BM_ScanAlpha(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(scan_alpha(0.0, pi, 1e-3));
  }
}
BENCHMARK(BM_ScanAlpha)->Unit(benchmark::kMicrosecond);

void BM_VerifyIdentities(benchmark::State& state) {
  const auto grid = static_cast<std::size_t>(state.range(0));
  const LhvModel m = position_style_model(grid);
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify_identities(m, Angle(0.4), Angle(1.1)));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_VerifyIdentities)
    ->RangeMultiplier(4)
    ->Range(16, 1024)
    ->Complexity()
    ->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();

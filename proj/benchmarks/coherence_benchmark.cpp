// Copyright 2026 The Coherence Toolkit Authors
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

#include <benchmark/benchmark.h>

#include "coherence/coherence.hpp"

namespace {

using namespace coherence;

void BM_HermitianEigendecomposition(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const auto rho = random_density_matrix(d, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(hermitian_eigendecomposition(rho.matrix()));
  }
}
BENCHMARK(BM_HermitianEigendecomposition)->Arg(2)->Arg(3)->Arg(4)->Arg(8)->Arg(16);

void BM_CMax(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const auto rho = random_density_matrix(d, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(c_max(rho));
  }
}
BENCHMARK(BM_CMax)->Arg(3)->Arg(4)->Arg(8);

void BM_CRobustness(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const auto rho = random_density_matrix(d, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(c_robustness(rho));
  }
}
BENCHMARK(BM_CRobustness)->Arg(2)->Arg(3)->Arg(4)->Arg(8);

void BM_TwirlAndApply(benchmark::State& state) {
  const auto channel = random_channel(3, 2, 4);
  const auto rho = random_density_matrix(3, 5);
  for (auto _ : state) {
    const auto twirled = dephasing_twirl(channel);
    benchmark::DoNotOptimize(apply(twirled, rho));
  }
}
BENCHMARK(BM_TwirlAndApply);

void BM_Falsify(benchmark::State& state) {
  const auto measure = static_cast<Measure>(state.range(0));
  const int trials = 100;
  for (auto _ : state) {
    benchmark::DoNotOptimize(falsify(measure, ChannelFamily::kSio, 3, trials, 6));
  }
  state.SetItemsProcessed(state.iterations() * trials);
  state.SetLabel(std::string(to_string(measure)));
}
BENCHMARK(BM_Falsify)
    ->Arg(static_cast<int>(Measure::kL1))
    ->Arg(static_cast<int>(Measure::kRelEntropy))
    ->Arg(static_cast<int>(Measure::kRobustness))
    ->Arg(static_cast<int>(Measure::kCMax))
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

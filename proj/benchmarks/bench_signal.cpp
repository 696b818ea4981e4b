/* Copyright 2026 The GyroMoE Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <benchmark/benchmark.h>

#include <random>

#include "gyromoe/bench/allan.hpp"
#include "gyromoe/signal/spectral.hpp"

using namespace gyromoe;

namespace {

std::vector<double> white(std::size_t n) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> d(0.0, 0.1);
  std::vector<double> x(n);
  for (double& v : x) v = d(rng);
  return x;
}

void BM_Psd(benchmark::State& state) {
  const auto x = white(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(signal::psd(x, 100.0));
  state.SetComplexityN(state.range(0));
}
// 256 is the segment length used by the denoiser; 1000 exercises the
// non-power-of-two path.
BENCHMARK(BM_Psd)->Arg(256)->Arg(1000)->Arg(4096);

void BM_AllanDeviation(benchmark::State& state) {
  const auto x = white(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(bench::allan_deviation(x, 100.0));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_AllanDeviation)->RangeMultiplier(8)->Range(1 << 12, 1 << 18)->Complexity();

}  // namespace

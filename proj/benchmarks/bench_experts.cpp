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


#include "gyromoe/de/de_expert.hpp"
#include "gyromoe/ore/ore_expert.hpp"
#include "gyromoe/signal/synth.hpp"

using namespace gyromoe;

namespace {

void BM_OreReconstruct(benchmark::State& state) {
  const ore::OreExpert expert(ore::OreConfig{});
  signal::PeakDatasetConfig d;
  d.count = 1;
  d.rng_seed = 4;
  const auto segment = signal::make_peak_segments(d).front();
  const auto clipped = signal::clip(segment, signal::ClipSpec(450.0));
  for (auto _ : state) benchmark::DoNotOptimize(expert.reconstruct(clipped));
}
BENCHMARK(BM_OreReconstruct)->Unit(benchmark::kMillisecond);

void BM_DeDenoise(benchmark::State& state) {
  const de::DeExpert expert(de::DeConfig{});
  signal::StaticNoiseConfig st;
  st.length = 256;
  st.rng_seed = 5;
  const auto x = signal::synth_static(st);
  for (auto _ : state) benchmark::DoNotOptimize(expert.denoise(x.values()));
}
BENCHMARK(BM_DeDenoise)->Unit(benchmark::kMillisecond);

void BM_OreTrainEpoch(benchmark::State& state) {
  signal::PeakDatasetConfig d;
  d.count = 64;
  d.rng_seed = 6;
  const auto data = signal::make_peak_segments(d);
  for (auto _ : state) {
    ore::OreExpert expert(ore::OreConfig{});
    benchmark::DoNotOptimize(ore::train_ore(expert, data, 1));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(data.size()));
}
BENCHMARK(BM_OreTrainEpoch)->Unit(benchmark::kMillisecond);

}  // namespace

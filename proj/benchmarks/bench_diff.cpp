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

#include <numeric>
#include <random>

#include "gyromoe/diff/graph.hpp"
#include "gyromoe/diff/ops.hpp"
#include "gyromoe/mae/backbone.hpp"

using namespace gyromoe;

namespace {

diff::Tensor random(diff::Shape shape, std::mt19937_64& rng) {
  diff::Tensor t(shape);
  std::normal_distribution<double> n;
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = n(rng);
  return t;
}

void BM_Matmul(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  const auto a = random(diff::Shape{n, n}, rng);
  const auto b = random(diff::Shape{n, n}, rng);
  for (auto _ : state) {
    diff::Graph g;
    benchmark::DoNotOptimize(diff::matmul(g.constant(a), g.constant(b)).value());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Matmul)->RangeMultiplier(2)->Range(16, 128)->Complexity();

// Forward and backward through one attention head, with and without the
// Gaussian decay term.
void BM_AttentionBackward(benchmark::State& state) {
  const std::size_t tokens = static_cast<std::size_t>(state.range(0));
  const bool decay = state.range(1) != 0;
  std::mt19937_64 rng(2);
  diff::Param q(random(diff::Shape{tokens, 32}, rng));
  diff::Param k(random(diff::Shape{tokens, 32}, rng));
  diff::Param v(random(diff::Shape{tokens, 32}, rng));
  diff::Param sigma(diff::Tensor::scalar(4.0));
  std::vector<std::size_t> pos(tokens);
  std::iota(pos.begin(), pos.end(), 0);
  for (auto _ : state) {
    diff::Graph g;
    const auto s = decay ? std::optional<diff::Var>(g.param(sigma)) : std::nullopt;
    g.backward(diff::sum(mae::gd_attention(g.param(q), g.param(k), g.param(v), s, pos)));
  }
}
BENCHMARK(BM_AttentionBackward)->ArgsProduct({{16, 64}, {0, 1}});

}  // namespace

BENCHMARK_MAIN();

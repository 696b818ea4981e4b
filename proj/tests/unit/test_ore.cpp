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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numeric>
#include <random>

#include "gyromoe/diff/grad_check.hpp"
#include "gyromoe/error.hpp"
#include "gyromoe/ore/losses.hpp"
#include "gyromoe/ore/ore_expert.hpp"
#include "gyromoe/signal/synth.hpp"

using namespace gyromoe;
using namespace gyromoe::ore;

namespace {

std::vector<std::size_t> range(std::size_t b, std::size_t e) {
  std::vector<std::size_t> v;
  for (std::size_t i = b; i < e; ++i) v.push_back(i);
  return v;
}

/// Golden-section search for the minimizer of a unimodal function on (lo, hi).
template <typename F>
double golden_min(F f, double lo, double hi) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - r * (b - a), d = a + r * (b - a);
  while (b - a > 1e-12) {
    if (f(c) < f(d)) {
      b = d;
    } else {
      a = c;
    }
    c = b - r * (b - a);
    d = a + r * (b - a);
  }
  return 0.5 * (a + b);
}

OreConfig small_config() {
  OreConfig cfg;
  cfg.backbone.segment_length = 64;
  cfg.backbone.patch_len = 4;
  cfg.backbone.embed_dim = 16;
  cfg.backbone.enc_layers = 1;
  cfg.backbone.dec_layers = 1;
  cfg.backbone.heads = 2;
  cfg.batch_size = 8;
  cfg.seed = 21;
  return cfg;
}

std::vector<std::vector<double>> small_dataset(std::size_t count, std::uint64_t seed) {
  signal::PeakDatasetConfig d;
  d.count = count;
  d.segment_length = 64;
  d.rng_seed = seed;
  return signal::make_peak_segments(d);
}

}  // namespace

TEST(ThresholdMask, Enumeration) {
  std::vector<double> x(256, 0.2);
  EXPECT_TRUE(threshold_mask(x, 16).empty());
  x[3 * 16 + 5] = -1.0;
  EXPECT_EQ(threshold_mask(x, 16).hidden(), (std::vector<std::size_t>{3}));
  std::fill(x.begin(), x.end(), 1.0);
  EXPECT_TRUE(threshold_mask(x, 16).full());
}

TEST(ThresholdMask, IgnoresPadding) {
  std::vector<double> x(32, 0.0);
  x[30] = 1.0;
  EXPECT_TRUE(threshold_mask(x, 8, std::size_t{24}).empty());
}

TEST(CorrLoss, WorkedExample) {
  const std::vector<double> x{0, 1, 2, 1}, xh{0, 1, 1, 1};
  const auto m = range(1, 4);
  EXPECT_EQ(extrema_set(x, m), (std::vector<std::size_t>{2}));
  EXPECT_NEAR(corr_loss(x, xh, m, 1.0), 5.0 / 3.0, 1e-15);
  EXPECT_NEAR(corr_loss(x, xh, m, 0.0), 2.0 / 3.0, 1e-15);
}

TEST(CorrLoss, ZeroForPerfectOrOffsetMonotone) {
  std::vector<double> x(20), xh(20);
  for (std::size_t i = 0; i < 20; ++i) {
    x[i] = 0.1 * i;
    xh[i] = x[i] + 0.7;
  }
  const auto m = range(0, 20);
  EXPECT_EQ(corr_loss(x, x, m, 1.0), 0.0);
  EXPECT_NEAR(corr_loss(x, xh, m, 1.0), 0.0, 1e-24);
}

TEST(CorrLoss, NonNegative) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> n;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> x(30), xh(30);
    for (std::size_t i = 0; i < 30; ++i) {
      x[i] = n(rng);
      xh[i] = n(rng);
    }
    EXPECT_GE(corr_loss(x, xh, range(5, 25), 1.0), 0.0);
  }
}

TEST(PinnLoss, ConstantReconstruction) {
  const std::vector<double> xh(32, 0.4);
  EXPECT_NEAR(pinn_loss(xh, range(0, 32), 1.0), 2.0 * std::log(2.0), 1e-12);
  EXPECT_EQ(mean_specific_power(xh, range(0, 32)), 0.0);
}

TEST(PinnLoss, BarrierMinimizer) {
  for (double kappa : {0.5, 1.0, 2.0}) {
    const double e = golden_min([&](double v) { return energy_barrier(v, kappa); }, 1e-9, 1.0 - 1e-9);
    EXPECT_NEAR(e, 1.0 / (1.0 + kappa), 1e-6) << "kappa " << kappa;
  }
  EXPECT_NEAR(energy_barrier(0.5, 1.0), 2.0 * std::log(2.0), 1e-15);
  EXPECT_GT(energy_barrier(1e-12, 1.0), 20.0);
  EXPECT_GT(energy_barrier(1.0 - 1e-12, 1.0), 20.0);
}

TEST(PinnLoss, LowerBoundAtUnitKappa) {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> n;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> xh(24);
    for (double& v : xh) v = n(rng);
    EXPECT_GE(pinn_loss(xh, range(0, 24), 1.0), 2.0 * std::log(2.0) - 1e-12);
  }
}

TEST(PinnLoss, NeedsUsableIndices) {
  const std::vector<double> xh(8, 0.0);
  EXPECT_EQ(pinn_indices(range(0, 8), 8), range(2, 7));
  EXPECT_THROW(pinn_loss(xh, range(0, 2), 1.0), ContractError);
}

TEST(TotalLoss, ComponentsCombine) {
  const std::vector<double> x(16, 0.3);
  const auto m = range(0, 16);
  LossWeights w;
  EXPECT_NEAR(ore_total_loss(x, x, m, w), 0.2 * 2.0 * std::log(2.0), 1e-12);

  std::mt19937_64 rng(9);
  std::normal_distribution<double> n;
  std::vector<double> a(16), b(16);
  for (std::size_t i = 0; i < 16; ++i) {
    a[i] = n(rng);
    b[i] = n(rng);
  }
  w.corr = 0.0;
  w.pinn = 0.0;
  double mse = 0.0;
  for (std::size_t i : m) mse += (a[i] - b[i]) * (a[i] - b[i]);
  EXPECT_NEAR(ore_total_loss(a, b, m, w), mse / 16.0, 1e-12);
}

TEST(TotalLoss, GraphMatchesScalarForm) {
  std::mt19937_64 rng(10);
  std::normal_distribution<double> n;
  std::vector<double> x(40), xh(40);
  for (std::size_t i = 0; i < 40; ++i) {
    x[i] = n(rng);
    xh[i] = n(rng);
  }
  const auto m = range(8, 30);
  diff::Graph g;
  const auto v = g.constant(diff::Tensor::vector(xh));
  EXPECT_NEAR(ore_total_loss(v, x, m, LossWeights{}).value().item(), ore_total_loss(x, xh, m, LossWeights{}), 1e-12);
}

TEST(TotalLoss, GradientCheckOnRandomSegments) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> n(0.0, 0.5);
    std::uniform_int_distribution<std::size_t> start(0, 40);
    std::vector<double> x(64), xh(64);
    for (std::size_t i = 0; i < 64; ++i) {
      x[i] = n(rng);
      xh[i] = n(rng);
    }
    const std::size_t b = start(rng);
    const auto m = range(b, b + 20);
    const auto rep = diff::grad_check(
        [&](diff::Graph&, std::span<const diff::Var> in) { return ore_total_loss(in[0], x, m, LossWeights{}); },
        {diff::Tensor::vector(xh)});
    EXPECT_TRUE(rep.passed) << "seed " << seed << " rel err " << rep.max_rel_error;
  }
}

TEST(OreExpertTest, InRangeSegmentIsUntouched) {
  const OreExpert expert(small_config());
  std::vector<double> x(64);
  for (std::size_t i = 0; i < 64; ++i) x[i] = 300.0 * std::sin(0.1 * static_cast<double>(i));
  EXPECT_EQ(expert.reconstruct(x), x);
}

TEST(OreExpertTest, OnlyClippedSamplesChange) {
  const OreExpert expert(small_config());
  std::vector<double> x(64, 12.5);
  x[20] = x[21] = x[22] = 450.0;
  x[50] = -450.0;
  const auto y = expert.reconstruct(x);
  for (std::size_t i = 0; i < 64; ++i) {
    if (std::abs(x[i]) < 450.0) EXPECT_EQ(y[i], x[i]) << i;
  }
}

TEST(OreExpertTest, FullySaturatedSegmentIsRejected) {
  const OreExpert expert(small_config());
  const std::vector<double> x(64, 450.0);
  EXPECT_THROW(expert.reconstruct(x), ContractError);
}

TEST(OreExpertTest, SaveLoadRoundTrip) {
  const OreExpert expert(small_config());
  const auto path = std::filesystem::temp_directory_path() / "gyromoe_ore_test.ckpt";
  expert.save(path);
  const auto back = OreExpert::load(path);
  std::filesystem::remove(path);
  EXPECT_EQ(back.config().backbone.embed_dim, 16u);
  EXPECT_EQ(back.config().seed, 21u);
  std::vector<double> x(64, 0.0);
  x[10] = 450.0;
  EXPECT_EQ(back.reconstruct(x), expert.reconstruct(x));
}

TEST(TrainOre, EmptyDatasetIsRejected) {
  EXPECT_THROW(train_ore(std::vector<std::vector<double>>{}, small_config(), 1), ContractError);
}

TEST(TrainOre, LossDecreasesAndIsDeterministic) {
  const auto data = small_dataset(320, 3);
  auto cfg = small_config();
  cfg.batch_size = 16;
  const auto a = train_ore(data, cfg, 8);
  const auto b = train_ore(data, cfg, 8);
  EXPECT_EQ(a.trace.step_loss, b.trace.step_loss);
  ASSERT_EQ(a.trace.epoch_loss.size(), 8u);
  EXPECT_LT(a.trace.epoch_loss.back(), a.trace.epoch_loss.front());

  // 10-step window means must not rise above the best earlier window by more
  // than the minibatch noise seen on the plateau.
  const auto& s = a.trace.step_loss;
  std::vector<double> windows;
  for (std::size_t i = 0; i + 10 <= s.size(); i += 10)
    windows.push_back(std::accumulate(s.begin() + static_cast<std::ptrdiff_t>(i),
                                      s.begin() + static_cast<std::ptrdiff_t>(i + 10), 0.0) /
                      10.0);
  ASSERT_GE(windows.size(), 2u);
  double best = windows.front();
  for (std::size_t i = 1; i < windows.size(); ++i) {
    EXPECT_LE(windows[i], 1.2 * best) << "window " << i;
    best = std::min(best, windows[i]);
  }
  EXPECT_LT(windows.back(), 0.25 * windows.front());

}

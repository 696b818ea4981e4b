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

#include <cmath>
#include <random>

#include "common/routing_oracle.hpp"
#include "gyromoe/error.hpp"
#include "gyromoe/gate/gate.hpp"

using namespace gyromoe;
using namespace gyromoe::gate;
using test_support::SegmentKind;

namespace {

GateConfig small_gate() {
  GateConfig cfg;
  cfg.segment_length = 64;
  cfg.quiet_run = 8;
  return cfg;
}

/// Stand-in experts whose outputs differ from the input at every sample.
Experts fake_experts() {
  Experts e;
  e.peak = [](std::span<const double> x, std::size_t) {
    std::vector<double> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = 1.5 * x[i] + static_cast<double>(i);
    return y;
  };
  e.denoise = [](std::span<const double> x, std::size_t) {
    std::vector<double> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = 0.5 * x[i] - 1000.0;
    return y;
  };
  return e;
}

}  // namespace

TEST(Route, AllZeroIsNoiseOnly) {
  const std::vector<double> x(64, 0.0);
  const auto d = route(x, small_gate());
  EXPECT_FALSE(d.peak);
  EXPECT_TRUE(d.noise);
  EXPECT_EQ(d.quiet_ranges.size(), 8u);
}

TEST(Route, TwoClippedSamplesDoNotFire) {
  std::vector<double> x(64, 100.0);
  x[10] = x[11] = 450.0;
  EXPECT_FALSE(route(x, small_gate()).peak);
  x[12] = 450.0 * (1.0 - 1e-7);
  EXPECT_TRUE(route(x, small_gate()).peak);
}

TEST(Route, RailAndQuietTailFireBoth) {
  GateConfig cfg;
  cfg.segment_length = 64;
  std::vector<double> x(64, 200.0);
  x[5] = x[6] = x[7] = 450.0;
  for (std::size_t i = 24; i < 64; ++i) x[i] = 0.01;
  const auto d = route(x, cfg);
  EXPECT_TRUE(d.peak);
  EXPECT_TRUE(d.noise);
  EXPECT_EQ(d.clipped_ranges, (std::vector<Range>{{5, 8}}));
  EXPECT_EQ(d.quiet_ranges, (std::vector<Range>{{24, 56}}));
}

TEST(Route, QuietRunsIgnorePadding) {
  std::vector<double> x(64, 200.0);
  for (std::size_t i = 40; i < 64; ++i) x[i] = 0.0;
  EXPECT_TRUE(route(x, 64, small_gate()).noise);
  EXPECT_FALSE(route(x, 46, small_gate()).noise);
}

TEST(GateConfigTest, Validation) {
  auto cfg = small_gate();
  cfg.peak_run = 0;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = small_gate();
  cfg.quiet_threshold = 500.0;
  EXPECT_THROW(cfg.validate(), ConfigError);
  EXPECT_DOUBLE_EQ(small_gate().effective_quiet_threshold(), 45.0);
}

TEST(Enhance, PassThroughIsExact) {
  std::vector<double> x(64);
  for (std::size_t i = 0; i < 64; ++i) x[i] = 100.0 + 0.123456789 * static_cast<double>(i);
  EXPECT_EQ(enhance_segment(x, 64, small_gate(), Experts{}), x);
}

TEST(Enhance, MissingExpertIsAConfigError) {
  std::vector<double> x(64, 100.0);
  x[1] = x[2] = x[3] = 450.0;
  EXPECT_THROW(enhance_segment(x, 64, small_gate(), Experts{}), ConfigError);
  auto only_peak = fake_experts();
  only_peak.denoise = nullptr;
  EXPECT_NO_THROW(enhance_segment(x, 64, small_gate(), only_peak));
}

TEST(Enhance, OnlyRailSamplesChange) {
  std::vector<double> x(64);
  for (std::size_t i = 0; i < 64; ++i) x[i] = 300.0 * std::sin(0.2 * static_cast<double>(i)) + 100.0;
  for (std::size_t i = 20; i < 26; ++i) x[i] = 450.0;
  const auto y = enhance_segment(x, 64, small_gate(), fake_experts());
  for (std::size_t i = 0; i < 64; ++i) {
    if (i >= 20 && i < 26)
      EXPECT_NE(y[i], x[i]);
    else
      EXPECT_EQ(y[i], x[i]);
  }
}

TEST(Enhance, MatchesTheScalarOracle) {
  const auto cfg = small_gate();
  const auto experts = fake_experts();
  std::mt19937_64 rng(17);
  const SegmentKind kinds[] = {SegmentKind::PeakOnly, SegmentKind::NoiseOnly, SegmentKind::Both,
                               SegmentKind::PassThrough};
  std::vector<double> series, expected;
  for (int i = 0; i < 100; ++i) {
    const SegmentKind kind = kinds[i % 4];
    const auto x = test_support::random_gate_segment(kind, cfg, rng);
    const auto d = route(x, cfg);
    EXPECT_EQ(d.peak, kind == SegmentKind::PeakOnly || kind == SegmentKind::Both) << i;
    EXPECT_EQ(d.noise, kind == SegmentKind::NoiseOnly || kind == SegmentKind::Both) << i;
    const auto want = test_support::routing_oracle(x, cfg, experts);
    EXPECT_EQ(enhance_segment(x, x.size(), cfg, experts), want) << "segment " << i;
    series.insert(series.end(), x.begin(), x.end());
    expected.insert(expected.end(), want.begin(), want.end());
  }
  const auto out = enhance(signal::SampleSeries(series, 100.0), cfg, experts);
  EXPECT_EQ(std::vector<double>(out.values().begin(), out.values().end()), expected);
}

TEST(Enhance, SeriesLengthIsPreserved) {
  const std::vector<double> x(150, 0.0);
  const auto out = enhance(signal::SampleSeries(x, 100.0), small_gate(), fake_experts());
  EXPECT_EQ(out.size(), 150u);
  EXPECT_EQ(out.sample_rate(), 100.0);
}

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
#include <numbers>
#include <random>
#include <sstream>

#include "gyromoe/error.hpp"
#include "gyromoe/signal/csv.hpp"
#include "gyromoe/signal/series.hpp"
#include "gyromoe/signal/spectral.hpp"
#include "gyromoe/signal/synth.hpp"

using namespace gyromoe;
using namespace gyromoe::signal;

namespace {

std::vector<double> vec(std::span<const double> s) { return {s.begin(), s.end()}; }

std::vector<double> random_values(std::size_t n, std::uint64_t seed, double scale = 1.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d(0.0, scale);
  std::vector<double> v(n);
  for (double& x : v) x = d(rng);
  return v;
}

}  // namespace

TEST(SampleSeries, RejectsInvalidConstruction) {
  EXPECT_THROW(SampleSeries({}, 100.0), ContractError);
  EXPECT_THROW(SampleSeries({1.0}, 0.0), ContractError);
  EXPECT_THROW(SampleSeries({1.0, NAN}, 100.0), ContractError);
  EXPECT_THROW(SampleSeries({1.0, INFINITY}, 100.0), ContractError);
  EXPECT_NO_THROW(SampleSeries({1.0}, 100.0));
}

TEST(Clip, SaturatesAtTheRail) {
  const ClipSpec spec(450.0);
  const std::vector<double> x{-500.0, 100.0, 470.0};
  EXPECT_EQ(clip(x, spec), (std::vector<double>{-450.0, 100.0, 450.0}));
  EXPECT_THROW(ClipSpec(0.0), ContractError);
}

TEST(Clip, IdempotentAndMonotone) {
  const ClipSpec spec(1.0);
  auto x = random_values(500, 1, 2.0);
  const auto once = clip(x, spec);
  EXPECT_EQ(clip(once, spec), once);
  std::sort(x.begin(), x.end());
  const auto sorted_clip = clip(x, spec);
  EXPECT_TRUE(std::is_sorted(sorted_clip.begin(), sorted_clip.end()));
}

TEST(Clip, InRangeSeriesUnchanged) {
  const std::vector<double> x{-449.0, 0.0, 449.9};
  EXPECT_EQ(clip(x, ClipSpec(450.0)), x);
}

TEST(Segment, OriginsAndPadding) {
  const SampleSeries s(std::vector<double>(10, 1.0), 100.0);
  const auto segs = segment(s, 4, 4);
  ASSERT_EQ(segs.size(), 3u);
  EXPECT_EQ(segs[0].origin, 0u);
  EXPECT_EQ(segs[1].origin, 4u);
  EXPECT_EQ(segs[2].origin, 8u);
  EXPECT_EQ(segs[2].valid_length, 2u);
  EXPECT_EQ(segs[2].values, (std::vector<double>{1.0, 1.0, 0.0, 0.0}));
}

TEST(Segment, WholeSeriesIsOneSegment) {
  const SampleSeries s(random_values(8, 2), 100.0);
  const auto segs = segment(s, 8, 8);
  ASSERT_EQ(segs.size(), 1u);
  EXPECT_EQ(segs[0].valid_length, 8u);
  EXPECT_EQ(segs[0].values, vec(s.values()));
}

TEST(Segment, UnitStride) {
  const SampleSeries s({1.0, 2.0, 3.0}, 100.0);
  const auto segs = segment(s, 2, 1);
  ASSERT_EQ(segs.size(), 3u);
  EXPECT_EQ(segs[2].origin, 2u);
  EXPECT_EQ(segs[2].valid_length, 1u);
}

TEST(Segment, LongerThanSeriesGivesOnePaddedSegment) {
  const SampleSeries s({1.0, 2.0, 3.0}, 100.0);
  const auto segs = segment(s, 8, 8);
  ASSERT_EQ(segs.size(), 1u);
  EXPECT_EQ(segs[0].valid_length, 3u);
  EXPECT_EQ(segs[0].values.size(), 8u);
}

TEST(Segment, EveryIndexCovered) {
  const SampleSeries s(random_values(37, 3), 100.0);
  for (std::size_t len = 1; len <= 12; ++len) {
    for (std::size_t stride = 1; stride <= len; ++stride) {
      std::vector<int> hits(37, 0);
      for (const auto& seg : segment(s, len, stride))
        for (std::size_t k = 0; k < seg.valid_length; ++k) ++hits[seg.origin + k];
      for (int h : hits) EXPECT_GE(h, 1);
    }
  }
}

TEST(Segment, ConcatenateInvertsNonOverlapping) {
  const SampleSeries s(random_values(1000, 4), 100.0);
  const auto segs = segment(s, 256, 256);
  EXPECT_EQ(concatenate(segs, s.size()), vec(s.values()));
}

TEST(Normalize, RoundTrip) {
  const ClipSpec spec(450.0);
  auto v = random_values(256, 5, 1500.0);
  for (double& x : v) x = std::clamp(x, -4500.0, 4500.0);
  const Segment seg{v, 0, v.size()};
  const auto [n, state] = normalize(seg, spec);
  for (std::size_t i = 0; i < v.size(); ++i) EXPECT_DOUBLE_EQ(n.values[i], v[i] / 450.0);
  const auto back = denormalize(n, state);
  for (std::size_t i = 0; i < v.size(); ++i) EXPECT_NEAR(back.values[i], v[i], 1e-12);
}

TEST(Csv, InfersSampleRate) {
  std::istringstream in("t,omega\n0,1\n0.01,2\n0.02,3\n");
  const auto s = read_csv(in);
  EXPECT_NEAR(s.sample_rate(), 100.0, 1e-9);
  EXPECT_EQ(vec(s.values()), (std::vector<double>{1.0, 2.0, 3.0}));
}

TEST(Csv, AcceptsCrlfAndMissingTrailingNewline) {
  std::istringstream in("t,omega\r\n0,1\r\n0.5,2");
  const auto s = read_csv(in);
  EXPECT_NEAR(s.sample_rate(), 2.0, 1e-12);
}

TEST(Csv, RejectsNanWithLineNumber) {
  std::istringstream in("t,omega\n0,1\n0.01,nan\n");
  try {
    read_csv(in);
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(Csv, RejectsMalformedRowsAndHeaders) {
  std::istringstream bad_header("time,omega\n0,1\n1,2\n");
  EXPECT_THROW(read_csv(bad_header), ParseError);
  std::istringstream three_cols("t,omega\n0,1,2\n1,2\n");
  EXPECT_THROW(read_csv(three_cols), ParseError);
  std::istringstream garbage("t,omega\n0,1\n1,abc\n");
  EXPECT_THROW(read_csv(garbage), ParseError);
}

TEST(Csv, RejectsNonUniformTime) {
  std::istringstream in("t,omega\n0,1\n0.01,2\n0.03,3\n0.04,4\n");
  EXPECT_THROW(read_csv(in), FormatError);
  std::istringstream backwards("t,omega\n0,1\n0.01,2\n0.005,3\n");
  EXPECT_THROW(read_csv(backwards), FormatError);
}

TEST(Csv, RoundTrip) {
  const SampleSeries s(random_values(777, 6, 300.0), 250.0);
  std::stringstream io;
  write_csv(io, s);
  const auto back = read_csv(io);
  ASSERT_EQ(back.size(), s.size());
  EXPECT_NEAR(back.sample_rate(), 250.0, 1e-6);
  for (std::size_t i = 0; i < s.size(); ++i) EXPECT_NEAR(back[i], s[i], 1e-9);
}

TEST(Spectral, ParsevalAgainstDirectSum) {
  for (std::size_t n : {2u, 3u, 7u, 64u, 100u, 1000u, 1024u, 1031u}) {
    const auto x = random_values(n, n);
    const auto X = dft(x);
    // Independent two-sided direct summation.
    double time_energy = 0.0, freq_energy = 0.0;
    for (double v : x) time_energy += v * v;
    for (std::size_t k = 0; k < n; ++k) {
      std::complex<double> acc = 0.0;
      for (std::size_t j = 0; j < n; ++j)
        acc += x[j] * std::polar(1.0, -2.0 * std::numbers::pi * double(k * j % n) / double(n));
      EXPECT_NEAR(std::abs(X[k] - acc), 0.0, 1e-9 * std::sqrt(time_energy * double(n)));
      freq_energy += std::norm(acc);
    }
    EXPECT_NEAR(freq_energy / double(n), time_energy, 1e-9 * time_energy);
  }
}

TEST(Spectral, InverseRoundTrip) {
  for (std::size_t n : {8u, 30u, 512u, 4095u}) {
    const auto x = random_values(n, 7 + n);
    const auto back = idft(dft(x));
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_NEAR(back[i].real(), x[i], 1e-9);
      EXPECT_NEAR(back[i].imag(), 0.0, 1e-9);
    }
  }
}

TEST(Spectral, EmptyInput) {
  EXPECT_TRUE(dft(std::vector<double>{}).empty());
}

TEST(Spectral, ConstantSeriesEnergyAtDc) {
  const std::vector<double> x(64, 3.0);
  const auto X = dft(x);
  double total = 0.0;
  for (const auto& c : X) total += std::norm(c);
  for (std::size_t k = 1; k < X.size(); ++k) EXPECT_LT(std::norm(X[k]), 1e-12 * total);
  // The periodogram removes the mean first, so every bin vanishes.
  for (double p : psd(x, 100.0).power) EXPECT_LT(p, 1e-20);
}

TEST(Spectral, SinusoidPeaksAtItsBin) {
  const std::size_t n = 256, k = 19;
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = std::sin(2.0 * std::numbers::pi * double(k * i) / double(n));
  const auto p = psd(x, 100.0);
  ASSERT_EQ(p.power.size(), n / 2 + 1);
  const auto peak = std::max_element(p.power.begin(), p.power.end()) - p.power.begin();
  EXPECT_EQ(static_cast<std::size_t>(peak), k);
  EXPECT_NEAR(p.frequencies[k], 100.0 * double(k) / double(n), 1e-12);
}

TEST(Spectral, PsdIntegratesToVariance) {
  const auto x = random_values(1000, 8, 2.0);
  const double fs = 50.0;
  const auto p = psd(x, fs);
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= double(x.size());
  double var = 0.0;
  for (double v : x) var += (v - mean) * (v - mean);
  var /= double(x.size());
  double integral = 0.0;
  for (double v : p.power) integral += v * fs / double(x.size());
  EXPECT_NEAR(integral, var, 1e-9 * var);
}

TEST(Synth, SilentConfigIsAllZero) {
  SynthConfig c;
  c.duration_s = 1.0;
  const auto r = synth_motion(c);
  for (double v : r.clean.values()) EXPECT_EQ(v, 0.0);
}

TEST(Synth, BurstApexNearAmplitude) {
  SynthConfig c;
  c.duration_s = 2.0;
  c.peak_events = {{1.0, 900.0, 0.05}};
  const auto r = synth_motion(c);
  double peak = 0.0;
  for (double v : r.clean.values()) peak = std::max(peak, std::abs(v));
  EXPECT_GE(peak, 850.0);
  EXPECT_LE(peak, 950.0);
  EXPECT_FALSE(r.truth_peaks(ClipSpec(450.0)).empty());
  EXPECT_TRUE(r.truth_peaks(ClipSpec(1000.0)).empty());
}

TEST(Synth, DeterministicGivenSeed) {
  SynthConfig c;
  c.duration_s = 3.0;
  c.white_noise_sigma = 1.0;
  c.drift_rate = 0.1;
  c.peak_events = {{1.0, 700.0, 0.05}, {2.0, -600.0, 0.08}};
  c.rng_seed = 42;
  EXPECT_EQ(synth_motion(c).clean, synth_motion(c).clean);
  auto other = c;
  other.rng_seed = 43;
  EXPECT_NE(vec(synth_motion(c).clean.values()), vec(synth_motion(other).clean.values()));
}

TEST(Synth, PeakDatasetRespectsRatioBounds) {
  PeakDatasetConfig c;
  c.count = 50;
  c.white_noise_sigma = 0.0;
  c.rng_seed = 9;
  const auto segs = make_peak_segments(c);
  ASSERT_EQ(segs.size(), 50u);
  for (const auto& s : segs) {
    ASSERT_EQ(s.size(), c.segment_length);
    double peak = 0.0;
    for (double v : s) peak = std::max(peak, std::abs(v));
    EXPECT_GT(peak, c.rail);
    EXPECT_LE(peak, c.max_ratio * c.rail * 1.05);
  }
}

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

#include "gyromoe/signal/synth.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "gyromoe/error.hpp"

namespace gyromoe::signal {

void SynthConfig::validate() const {
  if (!(duration_s > 0.0)) throw ContractError("synth.duration_s must be positive");
  if (!(sample_rate > 0.0)) throw ContractError("synth.sample_rate must be positive");
  if (white_noise_sigma < 0.0) throw ContractError("synth.white_noise_sigma must be >= 0");
  for (const auto& e : peak_events) {
    if (!(e.width_s > 0.0)) throw ContractError("synth.peak_events width_s must be positive");
  }
}

double burst_value(const PeakEvent& event, double t) {
  const double u = t - event.center_time;
  const double w = event.width_s;
  const double envelope = std::exp(-u * u / (2.0 * w * w));
  const double carrier = std::cos(2.0 * std::numbers::pi * u / (8.0 * w));
  return event.amplitude * envelope * carrier;
}

std::vector<std::size_t> SynthResult::truth_peaks(const ClipSpec& clip) const {
  std::vector<std::size_t> out;
  const auto x = clean.values();
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (std::abs(x[i]) > clip.level) out.push_back(i);
  }
  return out;
}

SynthResult synth_motion(const SynthConfig& config) {
  config.validate();
  const auto n = static_cast<std::size_t>(std::llround(config.duration_s * config.sample_rate));
  if (n == 0) throw ContractError("synth duration shorter than one sample");
  std::mt19937_64 rng(config.rng_seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / config.sample_rate;
    double v = config.drift_rate * t;
    for (const auto& e : config.peak_events) v += burst_value(e, t);
    if (config.white_noise_sigma > 0.0) v += config.white_noise_sigma * gauss(rng);
    x[i] = v;
  }
  return SynthResult{SampleSeries(std::move(x), config.sample_rate)};
}

SampleSeries synth_static(const StaticNoiseConfig& config) {
  if (config.length == 0) throw ContractError("static length must be positive");
  std::mt19937_64 rng(config.rng_seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double step = config.bias_walk_sigma * std::sqrt(1.0 / config.sample_rate);
  std::vector<double> x(config.length);
  double walk = 0.0;
  for (auto& v : x) {
    v = config.bias + walk + config.white_sigma * gauss(rng);
    if (step > 0.0) walk += step * gauss(rng);
  }
  return SampleSeries(std::move(x), config.sample_rate);
}

std::vector<double> synth_snippet(std::size_t length, double sample_rate, std::uint64_t seed) {
  if (length < 2) throw ContractError("snippet length must be >= 2");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> freq(0.3, 3.0);
  std::uniform_real_distribution<double> amp(0.3, 1.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  struct Tone {
    double f, a, p;
  };
  Tone tones[3];
  for (auto& tone : tones) tone = {freq(rng), amp(rng), phase(rng)};

  std::vector<double> s(length);
  for (std::size_t i = 0; i < length; ++i) {
    const double t = static_cast<double>(i) / sample_rate;
    const double hann =
        0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(length - 1));
    double v = 0.0;
    for (const auto& tone : tones) v += tone.a * std::sin(2.0 * std::numbers::pi * tone.f * t + tone.p);
    s[i] = hann * v;
  }
  return s;
}

std::vector<std::vector<double>> make_peak_segments(const PeakDatasetConfig& config) {
  if (config.segment_length < 16) throw ContractError("segment_length too short for peak synthesis");
  if (!(config.rail > 0.0)) throw ContractError("rail must be positive");
  if (!(config.min_ratio > 1.0) || config.max_ratio < config.min_ratio) {
    throw ContractError("peak ratio range must satisfy 1 < min_ratio <= max_ratio");
  }
  std::mt19937_64 rng(config.rng_seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);

  const double duration = static_cast<double>(config.segment_length) / config.sample_rate;
  std::vector<std::vector<double>> out;
  out.reserve(config.count);
  for (std::size_t s = 0; s < config.count; ++s) {
    PeakEvent main;
    main.width_s = config.min_width_s + (config.max_width_s - config.min_width_s) * unit(rng);
    main.center_time = duration * (0.25 + 0.5 * unit(rng));
    const double ratio = config.min_ratio + (config.max_ratio - config.min_ratio) * unit(rng);
    main.amplitude = (unit(rng) < 0.5 ? -1.0 : 1.0) * ratio * config.rail;

    std::vector<PeakEvent> events{main};
    if (unit(rng) < 0.5) {
      PeakEvent minor;
      minor.width_s = config.min_width_s + (config.max_width_s - config.min_width_s) * unit(rng);
      minor.amplitude = (unit(rng) < 0.5 ? -1.0 : 1.0) * (0.2 + 0.6 * unit(rng)) * config.rail;
      minor.center_time = duration * unit(rng);
      if (std::abs(minor.center_time - main.center_time) > 4.0 * (main.width_s + minor.width_s)) {
        events.push_back(minor);
      }
    }
    const double drift = (2.0 * unit(rng) - 1.0) * 0.05 * config.rail / duration;

    std::vector<double> x(config.segment_length);
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double t = static_cast<double>(i) / config.sample_rate;
      double v = drift * (t - 0.5 * duration);
      for (const auto& e : events) v += burst_value(e, t);
      v += config.white_noise_sigma * gauss(rng);
      x[i] = v;
    }
    out.push_back(std::move(x));
  }
  return out;
}

}  // namespace gyromoe::signal

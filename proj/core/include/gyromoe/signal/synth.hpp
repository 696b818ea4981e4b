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

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "gyromoe/signal/series.hpp"

namespace gyromoe::signal {

/// Gaussian-windowed burst. The carrier period is eight widths so the
/// central lobe dominates and its apex sits at `center_time`.
struct PeakEvent {
  double center_time = 0.0;  // s
  double amplitude = 0.0;    // deg/s, signed
  double width_s = 0.05;     // Gaussian sigma, s
};

struct SynthConfig {
  double duration_s = 10.0;
  double sample_rate = 100.0;
  double white_noise_sigma = 0.0;  // deg/s
  double drift_rate = 0.0;         // deg/s per s
  std::vector<PeakEvent> peak_events;
  std::uint64_t rng_seed = 0;

  void validate() const;
};

double burst_value(const PeakEvent& event, double t);

struct SynthResult {
  SampleSeries clean;

  /// Indices where the clean signal lies beyond the rail.
  std::vector<std::size_t> truth_peaks(const ClipSpec& clip) const;
};

SynthResult synth_motion(const SynthConfig& config);

/// Stationary gyro output: constant bias, white noise and a random-walk
/// bias component.
struct StaticNoiseConfig {
  std::size_t length = 4096;
  double sample_rate = 100.0;
  double bias = 0.0;             // deg/s
  double white_sigma = 0.1;      // deg/s
  double bias_walk_sigma = 0.0;  // deg/s per sqrt(s)
  std::uint64_t rng_seed = 0;
};

SampleSeries synth_static(const StaticNoiseConfig& config);

/// Smooth low-frequency motion clip (sum of a few sinusoids under a Hann
/// envelope) used as the weak-signal pool for denoiser augmentation.
std::vector<double> synth_snippet(std::size_t length, double sample_rate, std::uint64_t seed);

/// Self-supervised over-range training material: each segment holds one
/// dominant burst whose amplitude lies in [min_ratio, max_ratio] x rail,
/// optionally a weaker in-range burst, drift and white noise.
struct PeakDatasetConfig {
  std::size_t count = 2000;
  std::size_t segment_length = 256;
  double sample_rate = 100.0;
  double rail = 450.0;
  double min_ratio = 1.25;
  double max_ratio = 2.0;
  double min_width_s = 0.04;
  double max_width_s = 0.10;
  double white_noise_sigma = 1.0;
  std::uint64_t rng_seed = 0;
};

std::vector<std::vector<double>> make_peak_segments(const PeakDatasetConfig& config);

}  // namespace gyromoe::signal

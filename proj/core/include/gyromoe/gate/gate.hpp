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

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "gyromoe/signal/series.hpp"

namespace gyromoe::de {
class DeExpert;
}
namespace gyromoe::ore {
class OreExpert;
}

namespace gyromoe::gate {

struct GateConfig {
  double clip_level = 450.0;     // deg/s
  double clip_eps = 1e-6;        // relative band below the rail counted as clipped
  std::size_t peak_run = 3;      // consecutive clipped samples that fire the peak route
  std::size_t quiet_run = 32;    // n
  double quiet_threshold = 0.0;  // deg/s; <= 0 selects 10% of the clip level
  std::size_t segment_length = 256;

  double effective_quiet_threshold() const { return quiet_threshold > 0.0 ? quiet_threshold : 0.1 * clip_level; }
  bool is_clipped(double v) const { return !(std::abs(v) < clip_level * (1.0 - clip_eps)); }
  bool is_quiet(double v) const { return std::abs(v) < effective_quiet_threshold(); }
  void validate() const;
};

/// Half-open sample range [begin, end).
struct Range {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t size() const noexcept { return end - begin; }
  friend bool operator==(const Range&, const Range&) = default;
};

struct RouteDecision {
  bool peak = false;
  bool noise = false;
  std::vector<Range> clipped_ranges;  // maximal runs of clipped samples
  std::vector<Range> quiet_ranges;    // length-n windows the denoiser overwrites

  bool pass_through() const noexcept { return !peak && !noise; }
};

RouteDecision route(std::span<const double> segment, const GateConfig& config);
RouteDecision route(std::span<const double> segment, std::size_t valid_length, const GateConfig& config);

/// Maps a physical-unit segment (and its valid length) to an expert output
/// of the same length.
using ExpertFn = std::function<std::vector<double>(std::span<const double>, std::size_t)>;

struct Experts {
  ExpertFn peak;
  ExpertFn denoise;
};

Experts make_experts(const ore::OreExpert* peak, const de::DeExpert* denoise);

std::vector<double> enhance_segment(std::span<const double> segment, std::size_t valid_length,
                                    const GateConfig& config, const Experts& experts);

/// Splits into non-overlapping segments, enhances each and concatenates.
signal::SampleSeries enhance(const signal::SampleSeries& series, const GateConfig& config, const Experts& experts);

}  // namespace gyromoe::gate

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
#include <span>
#include <vector>

namespace gyromoe::signal {

/// Uniformly sampled angular-rate sequence (deg/s).
class SampleSeries {
 public:
  SampleSeries(std::vector<double> values, double sample_rate);

  std::span<const double> values() const noexcept { return values_; }
  std::vector<double>& mutable_values() noexcept { return values_; }
  double sample_rate() const noexcept { return sample_rate_; }
  double period() const noexcept { return 1.0 / sample_rate_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

  friend bool operator==(const SampleSeries&, const SampleSeries&) = default;

 private:
  std::vector<double> values_;
  double sample_rate_;
};

/// Symmetric full-scale limit of a sensor channel.
struct ClipSpec {
  explicit ClipSpec(double level);
  double level;
};

std::vector<double> clip(std::span<const double> x, const ClipSpec& spec);
SampleSeries clip(const SampleSeries& series, const ClipSpec& spec);

/// Fixed-length window of a parent series. Samples past `valid_length`
/// are zero padding and must be ignored by losses and metrics.
struct Segment {
  std::vector<double> values;
  std::size_t origin = 0;
  std::size_t valid_length = 0;
};

/// Windows start at every multiple of `stride` below the series length;
/// windows running past the end are zero-padded. `length` larger than the
/// series yields a single padded segment.
std::vector<Segment> segment(const SampleSeries& series, std::size_t length, std::size_t stride);

/// Inverse of `segment` for non-overlapping windows: writes the valid part
/// of each segment back at its origin.
std::vector<double> concatenate(std::span<const Segment> segments, std::size_t total_length);

struct NormState {
  double scale = 1.0;
};

/// Divides by the clip level so the rail sits at exactly +/-1.
std::pair<Segment, NormState> normalize(const Segment& segment, const ClipSpec& spec);
Segment denormalize(const Segment& segment, const NormState& state);

}  // namespace gyromoe::signal

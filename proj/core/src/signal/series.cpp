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

#include "gyromoe/signal/series.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gyromoe/error.hpp"

namespace gyromoe::signal {

SampleSeries::SampleSeries(std::vector<double> values, double sample_rate)
    : values_(std::move(values)), sample_rate_(sample_rate) {
  if (!(sample_rate_ > 0.0) || !std::isfinite(sample_rate_)) {
    throw ContractError("sample_rate must be positive and finite");
  }
  if (values_.empty()) {
    throw ContractError("series must hold at least one sample");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw ContractError("non-finite sample at index " + std::to_string(i));
    }
  }
}

ClipSpec::ClipSpec(double level_) : level(level_) {
  if (!(level > 0.0) || !std::isfinite(level)) {
    throw ContractError("clip level must be positive");
  }
}

std::vector<double> clip(std::span<const double> x, const ClipSpec& spec) {
  std::vector<double> out(x.size());
  std::transform(x.begin(), x.end(), out.begin(),
                 [&](double v) { return std::clamp(v, -spec.level, spec.level); });
  return out;
}

SampleSeries clip(const SampleSeries& series, const ClipSpec& spec) {
  return SampleSeries(clip(series.values(), spec), series.sample_rate());
}

std::vector<Segment> segment(const SampleSeries& series, std::size_t length, std::size_t stride) {
  if (length < 1) throw ContractError("segment length must be >= 1");
  if (stride < 1 || stride > length) throw ContractError("stride must lie in [1, length]");
  const auto x = series.values();
  std::vector<Segment> out;
  for (std::size_t origin = 0; origin < x.size(); origin += stride) {
    Segment seg;
    seg.origin = origin;
    seg.valid_length = std::min(length, x.size() - origin);
    seg.values.assign(length, 0.0);
    std::copy_n(x.begin() + static_cast<std::ptrdiff_t>(origin), seg.valid_length,
                seg.values.begin());
    out.push_back(std::move(seg));
  }
  return out;
}

std::vector<double> concatenate(std::span<const Segment> segments, std::size_t total_length) {
  std::vector<double> out(total_length, 0.0);
  for (const auto& seg : segments) {
    const std::size_t n = std::min(seg.valid_length, total_length - std::min(seg.origin, total_length));
    std::copy_n(seg.values.begin(), n, out.begin() + static_cast<std::ptrdiff_t>(seg.origin));
  }
  return out;
}

std::pair<Segment, NormState> normalize(const Segment& segment, const ClipSpec& spec) {
  Segment out = segment;
  for (double& v : out.values) v /= spec.level;
  return {std::move(out), NormState{spec.level}};
}

Segment denormalize(const Segment& segment, const NormState& state) {
  Segment out = segment;
  for (double& v : out.values) v *= state.scale;
  return out;
}

}  // namespace gyromoe::signal

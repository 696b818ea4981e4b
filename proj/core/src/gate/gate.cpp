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

#include "gyromoe/gate/gate.hpp"

#include <algorithm>
#include <string>

#include "gyromoe/de/de_expert.hpp"
#include "gyromoe/error.hpp"
#include "gyromoe/ore/ore_expert.hpp"

namespace gyromoe::gate {

void GateConfig::validate() const {
  if (!(clip_level > 0.0)) throw ConfigError("gate: clip level must be positive");
  if (clip_eps < 0.0 || clip_eps >= 1.0) throw ConfigError("gate: clip_eps must lie in [0, 1)");
  if (peak_run == 0) throw ConfigError("gate: peak_run must be at least 1");
  if (quiet_run == 0) throw ConfigError("gate: quiet_run must be at least 1");
  if (segment_length == 0) throw ConfigError("gate: segment length must be positive");
  if (!(effective_quiet_threshold() > 0.0)) throw ConfigError("gate: quiet threshold must be positive");
  if (!(effective_quiet_threshold() < clip_level * (1.0 - clip_eps)))
    throw ConfigError("gate: quiet threshold must lie below the clip rail");
}

RouteDecision route(std::span<const double> segment, std::size_t valid_length, const GateConfig& config) {
  config.validate();
  const std::size_t limit = std::min(valid_length, segment.size());
  RouteDecision d;
  for (std::size_t t = 0; t < limit;) {
    if (!config.is_clipped(segment[t])) {
      ++t;
      continue;
    }
    std::size_t end = t;
    while (end < limit && config.is_clipped(segment[end])) ++end;
    d.clipped_ranges.push_back({t, end});
    d.peak = d.peak || end - t >= config.peak_run;
    t = end;
  }
  const std::size_t n = config.quiet_run;
  for (std::size_t t = 0; t < limit;) {
    if (!config.is_quiet(segment[t])) {
      ++t;
      continue;
    }
    std::size_t end = t;
    while (end < limit && config.is_quiet(segment[end])) ++end;
    for (std::size_t s = t; s + n <= end; s += n) d.quiet_ranges.push_back({s, s + n});
    t = end;
  }
  d.noise = !d.quiet_ranges.empty();
  return d;
}

RouteDecision route(std::span<const double> segment, const GateConfig& config) {
  return route(segment, segment.size(), config);
}

Experts make_experts(const ore::OreExpert* peak, const de::DeExpert* denoise) {
  Experts e;
  if (peak != nullptr) {
    e.peak = [peak](std::span<const double> x, std::size_t valid) { return peak->reconstruct(x, valid); };
  }
  if (denoise != nullptr) {
    e.denoise = [denoise](std::span<const double> x, std::size_t valid) { return denoise->denoise(x, valid); };
  }
  return e;
}

namespace {

std::vector<double> run_expert(const ExpertFn& fn, const char* name, std::span<const double> x, std::size_t valid) {
  if (!fn) throw ConfigError(std::string("segment needs the ") + name + " expert, but none is loaded");
  auto out = fn(x, valid);
  if (out.size() != x.size()) throw DimensionError(std::string(name) + " expert changed the segment length");
  return out;
}

}  // namespace

std::vector<double> enhance_segment(std::span<const double> segment, std::size_t valid_length,
                                    const GateConfig& config, const Experts& experts) {
  const RouteDecision d = route(segment, valid_length, config);
  std::vector<double> y(segment.begin(), segment.end());
  if (d.peak) {
    const auto p = run_expert(experts.peak, "over-range", segment, valid_length);
    for (const Range& r : d.clipped_ranges)
      for (std::size_t t = r.begin; t < r.end; ++t) y[t] = p[t];
  }
  if (d.noise) {
    const auto n = run_expert(experts.denoise, "denoise", segment, valid_length);
    for (const Range& r : d.quiet_ranges)
      for (std::size_t t = r.begin; t < r.end; ++t) y[t] = n[t];
  }
  return y;
}

signal::SampleSeries enhance(const signal::SampleSeries& series, const GateConfig& config, const Experts& experts) {
  config.validate();
  auto segments = signal::segment(series, config.segment_length, config.segment_length);
  for (auto& s : segments) s.values = enhance_segment(s.values, s.valid_length, config, experts);
  return signal::SampleSeries(signal::concatenate(segments, series.size()), series.sample_rate());
}

}  // namespace gyromoe::gate

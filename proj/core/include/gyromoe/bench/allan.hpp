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
#include <optional>
#include <span>
#include <vector>

#include "gyromoe/signal/series.hpp"

namespace gyromoe::bench {

struct AllanCurve {
  std::vector<std::size_t> cluster_sizes;
  std::vector<double> cluster_times;  // s
  std::vector<double> deviations;     // input units
  std::vector<std::size_t> omitted;   // requested sizes with fewer than two clusters
};

/// Powers of two up to n / 8 (at least {1} for n >= 2).
std::vector<std::size_t> default_cluster_sizes(std::size_t n);

/// Non-overlapping Allan deviation. Requested sizes are sorted and
/// de-duplicated; sizes leaving fewer than two clusters are omitted.
AllanCurve allan_deviation(std::span<const double> x, double sample_rate, std::span<const std::size_t> cluster_sizes);
AllanCurve allan_deviation(std::span<const double> x, double sample_rate);
AllanCurve allan_deviation(const signal::SampleSeries& series);

/// Line of fixed slope through the longest contiguous run of points whose
/// local log-log slope is within `tolerance` of `slope`, evaluated at tau = 1 s.
std::optional<double> slope_intercept(const AllanCurve& curve, double slope, double tolerance = 0.15);

/// Quantization noise, deg/s.
std::optional<double> quantization_noise(const AllanCurve& curve);
/// Angle random walk, deg/sqrt(h).
std::optional<double> angle_random_walk(const AllanCurve& curve);
/// Bias instability, deg/h. Absent when the curve has no positive point.
std::optional<double> bias_instability(const AllanCurve& curve);

}  // namespace gyromoe::bench

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

#include "gyromoe/signal/series.hpp"

namespace gyromoe::bench {

/// Least-squares weights that evaluate a degree-`order` fit of the samples
/// at offsets [-left, right] at offset 0.
std::vector<double> savgol_weights(std::size_t left, std::size_t right, std::size_t order);

/// Savitzky-Golay smoothing; near the ends the fit uses the truncated window.
std::vector<double> savgol(std::span<const double> x, std::size_t window, std::size_t order);
signal::SampleSeries savgol(const signal::SampleSeries& series, std::size_t window, std::size_t order);

struct ClippedRun {
  std::size_t begin = 0;
  std::size_t end = 0;  // exclusive
};

struct ExtrapolationResult {
  std::vector<double> values;
  std::vector<ClippedRun> repaired;
  std::vector<ClippedRun> skipped;  // runs without enough clean flank samples
};

/// Fits one polynomial to `flank` in-range samples on each side of every
/// clipped run and evaluates it across the run.
ExtrapolationResult poly_extrapolate_peaks(std::span<const double> clipped, const signal::ClipSpec& clip,
                                           std::size_t order, std::size_t flank, double clip_eps = 1e-6);

}  // namespace gyromoe::bench

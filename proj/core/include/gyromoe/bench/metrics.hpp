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

/// Indices where |truth| exceeds the clip level.
std::vector<std::size_t> over_range_indices(std::span<const double> truth, const signal::ClipSpec& clip);

/// Peak-averaged PSNR over segments that contain over-range samples.
/// Returns +infinity when the over-range MSE is zero.
double psnr(std::span<const std::vector<double>> truth, std::span<const std::vector<double>> recon,
            const signal::ClipSpec& clip);
/// Splits both series into consecutive windows of `segment_length` first.
double psnr(std::span<const double> truth, std::span<const double> recon, const signal::ClipSpec& clip,
            std::size_t segment_length);

double p_mse(std::span<const double> truth, std::span<const double> recon, std::span<const std::size_t> indices);
double pearson_corr(std::span<const double> truth, std::span<const double> recon,
                    std::span<const std::size_t> indices);
double pearson_corr(std::span<const double> a, std::span<const double> b);

/// 10 log10(mean(s^2) / mean(n^2)); +infinity for a silent noise region.
double snr(std::span<const double> signal_region, std::span<const double> noise_region);

/// 100 (enhanced - raw) / raw; negative values are reductions.
double percent_reduction(double raw, double enhanced);

}  // namespace gyromoe::bench

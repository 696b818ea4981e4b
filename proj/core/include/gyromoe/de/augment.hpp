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
#include <random>
#include <span>
#include <vector>

#include "gyromoe/signal/spectral.hpp"

namespace gyromoe::de {

/// Median of the PSD bins (mean of the middle two for an even count).
double noise_floor(std::span<const double> power);
double noise_floor(const signal::SpectralDensity& psd);

/// alpha = beta * sqrt(p_noise) / max|s|.
double weak_signal_scale(double p_noise, std::span<const double> snippet, double beta);

struct MixedSignal {
  std::vector<double> x_mix;
  std::vector<double> x_clean;
  double alpha = 0.0;
  std::size_t offset = 0;
};

/// Adds the scaled snippet at a random offset. x_mix equals x_clean on return.
MixedSignal inject_weak_signal(std::span<const double> noise, double sample_rate, std::span<const double> snippet,
                               double beta, std::mt19937_64& rng);

/// Adds noise whose periodogram equals gain * `psd` bin by bin (random
/// phases). `psd` must have size/2 + 1 bins.
std::vector<double> spectral_corruption(std::span<const double> x, double sample_rate,
                                        const signal::SpectralDensity& psd, double gain, std::mt19937_64& rng);

struct AugmentConfig {
  double beta = 20.0;
  double corruption_gain = 1.0;
  std::vector<std::vector<double>> snippet_pool;
  std::uint64_t rng_seed = 0;

  void validate() const;
};

/// Full pipeline for one noise segment: floor estimate, weak-signal
/// injection, spectrally matched corruption of the mixture.
MixedSignal augment(std::span<const double> noise, double sample_rate, const AugmentConfig& config,
                    std::mt19937_64& rng);

}  // namespace gyromoe::de

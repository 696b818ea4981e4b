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

#include "gyromoe/de/augment.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gyromoe/error.hpp"

namespace gyromoe::de {

double noise_floor(std::span<const double> power) {
  if (power.empty()) throw ContractError("noise_floor: empty spectrum");
  std::vector<double> v(power.begin(), power.end());
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  const double upper = v[mid];
  if (v.size() % 2 == 1) return upper;
  const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

double noise_floor(const signal::SpectralDensity& psd) { return noise_floor(psd.power); }

double weak_signal_scale(double p_noise, std::span<const double> snippet, double beta) {
  if (p_noise < 0.0) throw ContractError("noise floor must be non-negative");
  if (beta < 0.0) throw ContractError("beta must be non-negative");
  double peak = 0.0;
  for (double v : snippet) peak = std::max(peak, std::abs(v));
  if (!(peak > 0.0)) throw ContractError("weak-signal snippet is identically zero");
  return beta * std::sqrt(p_noise) / peak;
}

MixedSignal inject_weak_signal(std::span<const double> noise, double sample_rate, std::span<const double> snippet,
                               double beta, std::mt19937_64& rng) {
  if (snippet.size() > noise.size()) throw ContractError("weak-signal snippet longer than the noise segment");
  MixedSignal out;
  out.x_clean.assign(noise.begin(), noise.end());
  out.alpha = weak_signal_scale(noise_floor(signal::psd(noise, sample_rate)), snippet, beta);
  std::uniform_int_distribution<std::size_t> pick(0, noise.size() - snippet.size());
  out.offset = pick(rng);
  for (std::size_t i = 0; i < snippet.size(); ++i) out.x_clean[out.offset + i] += out.alpha * snippet[i];
  out.x_mix = out.x_clean;
  return out;
}

std::vector<double> spectral_corruption(std::span<const double> x, double sample_rate,
                                        const signal::SpectralDensity& psd, double gain, std::mt19937_64& rng) {
  const std::size_t n = x.size();
  if (psd.power.size() != n / 2 + 1) throw DimensionError("spectral_corruption: PSD does not match the input length");
  if (gain < 0.0) throw ContractError("corruption gain must be non-negative");
  std::vector<double> out(x.begin(), x.end());
  if (gain == 0.0) return out;
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  std::vector<signal::Complex> spec(n);
  const double base = sample_rate * static_cast<double>(n);
  for (std::size_t k = 1; k <= n / 2; ++k) {
    const bool unpaired = (2 * k == n);
    const double mag = std::sqrt(gain * psd.power[k] * base / (unpaired ? 1.0 : 2.0));
    const double phi = phase(rng);
    if (unpaired) {
      spec[k] = std::cos(phi) < 0.0 ? -mag : mag;
    } else {
      spec[k] = std::polar(mag, phi);
      spec[n - k] = std::conj(spec[k]);
    }
  }
  const auto noise = signal::idft(spec);
  for (std::size_t i = 0; i < n; ++i) out[i] += noise[i].real();
  return out;
}

void AugmentConfig::validate() const {
  if (beta < 0.0) throw ContractError("beta must be non-negative");
  if (corruption_gain < 0.0) throw ContractError("corruption gain must be non-negative");
  if (beta > 0.0 && snippet_pool.empty()) throw ContractError("beta > 0 needs a non-empty snippet pool");
}

MixedSignal augment(std::span<const double> noise, double sample_rate, const AugmentConfig& config,
                    std::mt19937_64& rng) {
  config.validate();
  MixedSignal out;
  if (config.beta > 0.0) {
    std::uniform_int_distribution<std::size_t> pick(0, config.snippet_pool.size() - 1);
    out = inject_weak_signal(noise, sample_rate, config.snippet_pool[pick(rng)], config.beta, rng);
  } else {
    out.x_clean.assign(noise.begin(), noise.end());
    out.x_mix = out.x_clean;
  }
  const auto spectrum = signal::psd(noise, sample_rate);
  out.x_mix = spectral_corruption(out.x_mix, sample_rate, spectrum, config.corruption_gain, rng);
  return out;
}

}  // namespace gyromoe::de

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

#include <complex>
#include <span>
#include <vector>

#include "gyromoe/signal/series.hpp"

namespace gyromoe::signal {

using Complex = std::complex<double>;

/// Unnormalized forward transform X_k = sum_n x_n exp(-2 pi i k n / N).
/// Radix-2 for power-of-two lengths, Bluestein otherwise.
std::vector<Complex> dft(std::span<const double> x);
std::vector<Complex> dft(std::span<const Complex> x);

/// Inverse with the 1/N factor, so idft(dft(x)) == x.
std::vector<Complex> idft(std::span<const Complex> spectrum);

/// One-sided power spectral density in (deg/s)^2 / Hz.
struct SpectralDensity {
  std::vector<double> frequencies;
  std::vector<double> power;
};

/// Single periodogram of the mean-removed input. Bins 0..N/2; interior bins
/// carry the folded negative-frequency power.
SpectralDensity psd(std::span<const double> x, double sample_rate);
SpectralDensity psd(const SampleSeries& series);

}  // namespace gyromoe::signal

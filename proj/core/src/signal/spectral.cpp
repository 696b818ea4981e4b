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

#include "gyromoe/signal/spectral.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "gyromoe/error.hpp"

namespace gyromoe::signal {
namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// In-place iterative Cooley-Tukey; sign = -1 forward, +1 inverse (unscaled).
void fft_radix2(std::vector<Complex>& a, int sign) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double angle = sign * 2.0 * std::numbers::pi / static_cast<double>(len);
    const std::size_t half = len / 2;
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const Complex w = std::polar(1.0, angle * static_cast<double>(k));
        const Complex u = a[i + k];
        const Complex v = a[i + k + half] * w;
        a[i + k] = u + v;
        a[i + k + half] = u - v;
      }
    }
  }
}

// Bluestein chirp-z transform over radix-2 FFTs.
std::vector<Complex> bluestein(std::span<const Complex> x, int sign) {
  const std::size_t n = x.size();
  std::size_t m = 1;
  while (m < 2 * n - 1) m <<= 1;
  std::vector<Complex> chirp(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto k2 = static_cast<double>((k * k) % (2 * n));
    chirp[k] = std::polar(1.0, sign * std::numbers::pi * k2 / static_cast<double>(n));
  }
  std::vector<Complex> a(m), b(m);
  for (std::size_t k = 0; k < n; ++k) a[k] = x[k] * chirp[k];
  b[0] = std::conj(chirp[0]);
  for (std::size_t k = 1; k < n; ++k) b[k] = b[m - k] = std::conj(chirp[k]);
  fft_radix2(a, -1);
  fft_radix2(b, -1);
  for (std::size_t i = 0; i < m; ++i) a[i] *= b[i];
  fft_radix2(a, +1);
  std::vector<Complex> out(n);
  const double inv_m = 1.0 / static_cast<double>(m);
  for (std::size_t k = 0; k < n; ++k) out[k] = a[k] * chirp[k] * inv_m;
  return out;
}

std::vector<Complex> transform(std::span<const Complex> x, int sign) {
  if (x.empty()) return {};
  if (is_power_of_two(x.size())) {
    std::vector<Complex> a(x.begin(), x.end());
    fft_radix2(a, sign);
    return a;
  }
  return bluestein(x, sign);
}

}  // namespace

std::vector<Complex> dft(std::span<const Complex> x) { return transform(x, -1); }

std::vector<Complex> dft(std::span<const double> x) {
  std::vector<Complex> c(x.begin(), x.end());
  return transform(c, -1);
}

std::vector<Complex> idft(std::span<const Complex> spectrum) {
  auto out = transform(spectrum, +1);
  const double inv = 1.0 / static_cast<double>(spectrum.size());
  for (auto& v : out) v *= inv;
  return out;
}

SpectralDensity psd(std::span<const double> x, double sample_rate) {
  if (x.size() < 2) throw ContractError("psd needs at least two samples");
  if (!(sample_rate > 0.0)) throw ContractError("sample_rate must be positive");
  const std::size_t n = x.size();
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
  std::vector<double> centered(x.begin(), x.end());
  for (double& v : centered) v -= mean;
  const auto spectrum = dft(centered);

  const std::size_t bins = n / 2 + 1;
  SpectralDensity out;
  out.frequencies.resize(bins);
  out.power.resize(bins);
  const double norm = 1.0 / (sample_rate * static_cast<double>(n));
  for (std::size_t k = 0; k < bins; ++k) {
    const bool unpaired = (k == 0) || (n % 2 == 0 && k == n / 2);
    out.frequencies[k] = static_cast<double>(k) * sample_rate / static_cast<double>(n);
    out.power[k] = (unpaired ? 1.0 : 2.0) * std::norm(spectrum[k]) * norm;
  }
  return out;
}

SpectralDensity psd(const SampleSeries& series) { return psd(series.values(), series.sample_rate()); }

}  // namespace gyromoe::signal

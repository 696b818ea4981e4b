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

#include "gyromoe/bench/allan.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gyromoe/error.hpp"

namespace gyromoe::bench {

std::vector<std::size_t> default_cluster_sizes(std::size_t n) {
  std::vector<std::size_t> out;
  if (n < 2) return out;
  out.push_back(1);
  for (std::size_t m = 2; m <= n / 8; m *= 2) out.push_back(m);
  return out;
}

AllanCurve allan_deviation(std::span<const double> x, double sample_rate, std::span<const std::size_t> cluster_sizes) {
  if (!(sample_rate > 0.0)) throw ContractError("allan_deviation: sample rate must be positive");
  std::vector<std::size_t> sizes(cluster_sizes.begin(), cluster_sizes.end());
  std::sort(sizes.begin(), sizes.end());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
  AllanCurve curve;
  for (std::size_t m : sizes) {
    if (m == 0) throw ContractError("allan_deviation: cluster size must be positive");
    const std::size_t clusters = x.size() / m;
    if (clusters < 2) {
      curve.omitted.push_back(m);
      continue;
    }
    double acc = 0.0;
    double prev = 0.0;
    for (std::size_t k = 0; k < clusters; ++k) {
      double s = 0.0;
      for (std::size_t j = k * m; j < (k + 1) * m; ++j) s += x[j];
      const double mean = s / static_cast<double>(m);
      if (k > 0) acc += (mean - prev) * (mean - prev);
      prev = mean;
    }
    curve.cluster_sizes.push_back(m);
    curve.cluster_times.push_back(static_cast<double>(m) / sample_rate);
    curve.deviations.push_back(std::sqrt(acc / (2.0 * static_cast<double>(clusters - 1))));
  }
  return curve;
}

AllanCurve allan_deviation(std::span<const double> x, double sample_rate) {
  const auto sizes = default_cluster_sizes(x.size());
  return allan_deviation(x, sample_rate, sizes);
}

AllanCurve allan_deviation(const signal::SampleSeries& series) {
  return allan_deviation(series.values(), series.sample_rate());
}

std::optional<double> slope_intercept(const AllanCurve& curve, double slope, double tolerance) {
  const std::size_t n = curve.deviations.size();
  if (n < 2) return std::nullopt;
  std::vector<double> lt(n), ls(n);
  std::vector<bool> finite(n);
  for (std::size_t i = 0; i < n; ++i) {
    lt[i] = std::log(curve.cluster_times[i]);
    finite[i] = curve.deviations[i] > 0.0;
    ls[i] = finite[i] ? std::log(curve.deviations[i]) : 0.0;
  }
  std::vector<bool> ok(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = i == 0 ? 0 : i - 1;
    const std::size_t hi = i + 1 == n ? i : i + 1;
    if (!finite[lo] || !finite[i] || !finite[hi]) continue;
    const double local = (ls[hi] - ls[lo]) / (lt[hi] - lt[lo]);
    ok[i] = std::abs(local - slope) <= tolerance;
  }
  std::size_t best_begin = 0, best_len = 0;
  for (std::size_t i = 0; i < n;) {
    if (!ok[i]) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < n && ok[j]) ++j;
    if (j - i > best_len) {
      best_begin = i;
      best_len = j - i;
    }
    i = j;
  }
  if (best_len == 0) return std::nullopt;
  double acc = 0.0;
  for (std::size_t i = best_begin; i < best_begin + best_len; ++i) acc += ls[i] - slope * lt[i];
  return std::exp(acc / static_cast<double>(best_len));
}

std::optional<double> quantization_noise(const AllanCurve& curve) {
  const auto s = slope_intercept(curve, -1.0);
  if (!s) return std::nullopt;
  return *s / std::sqrt(3.0);
}

std::optional<double> angle_random_walk(const AllanCurve& curve) {
  const auto s = slope_intercept(curve, -0.5);
  if (!s) return std::nullopt;
  return *s * 60.0;
}

std::optional<double> bias_instability(const AllanCurve& curve) {
  std::optional<double> lowest;
  for (double d : curve.deviations)
    if (d > 0.0 && (!lowest || d < *lowest)) lowest = d;
  if (!lowest) return std::nullopt;
  return *lowest * std::sqrt(2.0 * std::numbers::ln2 / std::numbers::pi) * 3600.0;
}

}  // namespace gyromoe::bench

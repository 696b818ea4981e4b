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

#include "gyromoe/bench/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gyromoe/error.hpp"

namespace gyromoe::bench {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void same_length(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw DimensionError(std::string(what) + ": sequences differ in length (" + std::to_string(a) + " vs " +
                         std::to_string(b) + ")");
  }
}

void in_range(std::span<const std::size_t> idx, std::size_t n, const char* what) {
  if (idx.empty()) throw ContractError(std::string(what) + ": empty index set");
  for (std::size_t i : idx)
    if (i >= n) throw ContractError(std::string(what) + ": index outside the sequence");
}

}  // namespace

std::vector<std::size_t> over_range_indices(std::span<const double> truth, const signal::ClipSpec& clip) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < truth.size(); ++i)
    if (std::abs(truth[i]) > clip.level) out.push_back(i);
  return out;
}

double psnr(std::span<const std::vector<double>> truth, std::span<const std::vector<double>> recon,
            const signal::ClipSpec& clip) {
  same_length(truth.size(), recon.size(), "psnr");
  double peak_sum = 0.0, err_sum = 0.0;
  std::size_t segments = 0, samples = 0;
  for (std::size_t s = 0; s < truth.size(); ++s) {
    same_length(truth[s].size(), recon[s].size(), "psnr");
    const auto idx = over_range_indices(truth[s], clip);
    if (idx.empty()) continue;
    double peak = 0.0;
    for (double v : truth[s]) peak = std::max(peak, std::abs(v));
    peak_sum += peak;
    ++segments;
    for (std::size_t i : idx) err_sum += (truth[s][i] - recon[s][i]) * (truth[s][i] - recon[s][i]);
    samples += idx.size();
  }
  if (segments == 0) throw ContractError("psnr: no segment holds an over-range sample");
  const double excess = peak_sum / static_cast<double>(segments) - clip.level;
  if (!(excess > 0.0)) throw ContractError("psnr: mean peak does not exceed the clip level");
  const double mse = err_sum / static_cast<double>(samples);
  if (mse == 0.0) return kInf;
  return 10.0 * std::log10(excess * excess / mse);
}

double psnr(std::span<const double> truth, std::span<const double> recon, const signal::ClipSpec& clip,
            std::size_t segment_length) {
  same_length(truth.size(), recon.size(), "psnr");
  if (segment_length == 0) throw ContractError("psnr: segment length must be positive");
  std::vector<std::vector<double>> ts, rs;
  for (std::size_t b = 0; b < truth.size(); b += segment_length) {
    const std::size_t e = std::min(truth.size(), b + segment_length);
    ts.emplace_back(truth.begin() + static_cast<std::ptrdiff_t>(b), truth.begin() + static_cast<std::ptrdiff_t>(e));
    rs.emplace_back(recon.begin() + static_cast<std::ptrdiff_t>(b), recon.begin() + static_cast<std::ptrdiff_t>(e));
  }
  return psnr(ts, rs, clip);
}

double p_mse(std::span<const double> truth, std::span<const double> recon, std::span<const std::size_t> indices) {
  same_length(truth.size(), recon.size(), "p_mse");
  in_range(indices, truth.size(), "p_mse");
  double acc = 0.0;
  for (std::size_t i : indices) acc += (truth[i] - recon[i]) * (truth[i] - recon[i]);
  return acc / static_cast<double>(indices.size());
}

double pearson_corr(std::span<const double> truth, std::span<const double> recon,
                    std::span<const std::size_t> indices) {
  same_length(truth.size(), recon.size(), "pearson_corr");
  in_range(indices, truth.size(), "pearson_corr");
  std::vector<double> a, b;
  for (std::size_t i : indices) {
    a.push_back(truth[i]);
    b.push_back(recon[i]);
  }
  return pearson_corr(a, b);
}

double pearson_corr(std::span<const double> a, std::span<const double> b) {
  same_length(a.size(), b.size(), "pearson_corr");
  if (a.empty()) throw ContractError("pearson_corr: empty input");
  const double n = static_cast<double>(a.size());
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  if (saa == 0.0 || sbb == 0.0) throw ContractError("pearson_corr: zero variance");
  return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

double snr(std::span<const double> signal_region, std::span<const double> noise_region) {
  if (signal_region.empty() || noise_region.empty()) throw ContractError("snr: empty region");
  double ps = 0.0, pn = 0.0;
  for (double v : signal_region) ps += v * v;
  for (double v : noise_region) pn += v * v;
  ps /= static_cast<double>(signal_region.size());
  pn /= static_cast<double>(noise_region.size());
  if (pn == 0.0) return kInf;
  return 10.0 * std::log10(ps / pn);
}

double percent_reduction(double raw, double enhanced) {
  if (raw == 0.0) throw ContractError("percent_reduction: raw value is zero");
  return 100.0 * (enhanced - raw) / raw;
}

}  // namespace gyromoe::bench

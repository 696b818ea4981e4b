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
#include <string>

#include "gyromoe/bench/allan.hpp"
#include "gyromoe/signal/series.hpp"

namespace gyromoe::bench {

struct SampleRange {
  std::size_t begin = 0;
  std::size_t end = 0;  // exclusive
  bool empty() const noexcept { return end <= begin; }
};

struct MetricSet {
  std::optional<double> psnr_db;
  std::optional<double> p_mse;
  std::optional<double> corr;
  std::optional<double> snr_db;
  std::optional<double> qn_dps;
  std::optional<double> arw_dsqrth;
  std::optional<double> bi_dph;
};

struct MetricReport {
  MetricSet enhanced;
  MetricSet raw;
  std::optional<double> p_mse_reduction_pct;
  std::optional<double> qn_reduction_pct;
  std::optional<double> arw_reduction_pct;
  std::optional<double> bi_reduction_pct;
};

struct ReportOptions {
  double clip_level = 450.0;
  std::size_t segment_length = 256;
  SampleRange static_region;
};

/// Peak metrics use the over-range samples of `truth`; SNR compares the
/// signal outside the static region with the signal inside it; Allan
/// metrics use the static region only.
MetricSet evaluate(std::span<const double> y, std::span<const double> truth, double sample_rate,
                   const ReportOptions& options);
MetricReport report(const signal::SampleSeries& raw, const signal::SampleSeries& enhanced,
                    const signal::SampleSeries& truth, const ReportOptions& options);

/// Flat JSON object; absent metrics are null and infinities are "inf".
std::string to_json(const MetricReport& report);

}  // namespace gyromoe::bench

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

#include "gyromoe/bench/report.hpp"

#include <cmath>
#include <vector>

#include "gyromoe/bench/metrics.hpp"
#include "gyromoe/error.hpp"
#include "json.hpp"

namespace gyromoe::bench {

MetricSet evaluate(std::span<const double> y, std::span<const double> truth, double sample_rate,
                   const ReportOptions& options) {
  if (y.size() != truth.size()) throw DimensionError("report: series differ in length");
  const signal::ClipSpec clip(options.clip_level);
  MetricSet m;
  const auto peaks = over_range_indices(truth, clip);
  if (!peaks.empty()) {
    m.psnr_db = psnr(truth, y, clip, options.segment_length);
    m.p_mse = p_mse(truth, y, peaks);
    try {
      m.corr = pearson_corr(truth, y, peaks);
    } catch (const ContractError&) {
      // A flat rail (or flat truth) leaves the coefficient undefined.
    }
  }
  const SampleRange& r = options.static_region;
  if (!r.empty()) {
    if (r.end > y.size()) throw ContractError("report: static region runs past the end of the series");
    const auto quiet = y.subspan(r.begin, r.end - r.begin);
    std::vector<double> active(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(r.begin));
    active.insert(active.end(), y.begin() + static_cast<std::ptrdiff_t>(r.end), y.end());
    if (!active.empty()) m.snr_db = snr(active, quiet);
    const auto curve = allan_deviation(quiet, sample_rate);
    m.qn_dps = quantization_noise(curve);
    m.arw_dsqrth = angle_random_walk(curve);
    m.bi_dph = bias_instability(curve);
  }
  return m;
}

namespace {

std::optional<double> reduction(const std::optional<double>& raw, const std::optional<double>& enhanced) {
  if (!raw || !enhanced || *raw == 0.0) return std::nullopt;
  return percent_reduction(*raw, *enhanced);
}

nlohmann::ordered_json value(const std::optional<double>& v) {
  if (!v) return nullptr;
  if (std::isinf(*v)) return *v > 0 ? "inf" : "-inf";
  return *v;
}

}  // namespace

MetricReport report(const signal::SampleSeries& raw, const signal::SampleSeries& enhanced,
                    const signal::SampleSeries& truth, const ReportOptions& options) {
  MetricReport rep;
  rep.raw = evaluate(raw.values(), truth.values(), raw.sample_rate(), options);
  rep.enhanced = evaluate(enhanced.values(), truth.values(), enhanced.sample_rate(), options);
  rep.p_mse_reduction_pct = reduction(rep.raw.p_mse, rep.enhanced.p_mse);
  rep.qn_reduction_pct = reduction(rep.raw.qn_dps, rep.enhanced.qn_dps);
  rep.arw_reduction_pct = reduction(rep.raw.arw_dsqrth, rep.enhanced.arw_dsqrth);
  rep.bi_reduction_pct = reduction(rep.raw.bi_dph, rep.enhanced.bi_dph);
  return rep;
}

std::string to_json(const MetricReport& r) {
  nlohmann::ordered_json j;
  j["psnr_db"] = value(r.enhanced.psnr_db);
  j["p_mse"] = value(r.enhanced.p_mse);
  j["corr"] = value(r.enhanced.corr);
  j["snr_db"] = value(r.enhanced.snr_db);
  j["qn_dps"] = value(r.enhanced.qn_dps);
  j["arw_dsqrth"] = value(r.enhanced.arw_dsqrth);
  j["bi_dph"] = value(r.enhanced.bi_dph);
  j["p_mse_reduction_pct"] = value(r.p_mse_reduction_pct);
  j["qn_reduction_pct"] = value(r.qn_reduction_pct);
  j["arw_reduction_pct"] = value(r.arw_reduction_pct);
  j["bi_reduction_pct"] = value(r.bi_reduction_pct);
  j["raw_psnr_db"] = value(r.raw.psnr_db);
  j["raw_p_mse"] = value(r.raw.p_mse);
  j["raw_corr"] = value(r.raw.corr);
  j["raw_snr_db"] = value(r.raw.snr_db);
  j["raw_qn_dps"] = value(r.raw.qn_dps);
  j["raw_arw_dsqrth"] = value(r.raw.arw_dsqrth);
  j["raw_bi_dph"] = value(r.raw.bi_dph);
  return j.dump(2) + "\n";
}

}  // namespace gyromoe::bench

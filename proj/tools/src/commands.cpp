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

#include "gyromoe/cli/commands.hpp"

#include <spdlog/spdlog.h>

#include <cstdio>
#include <fstream>
#include <random>

#include "gyromoe/bench/allan.hpp"
#include "gyromoe/bench/report.hpp"
#include "gyromoe/error.hpp"
#include "gyromoe/gate/gate.hpp"
#include "gyromoe/signal/csv.hpp"
#include "json.hpp"

namespace gyromoe::cli {

namespace fs = std::filesystem;

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write '" + path.string() + "'");
  return out;
}

void write_loss_csv(const fs::path& path, const std::vector<double>& epoch_loss) {
  auto out = open_out(path);
  out << "epoch,loss\n";
  for (std::size_t i = 0; i < epoch_loss.size(); ++i) out << i + 1 << ',' << num(epoch_loss[i]) << '\n';
}

fs::path with_suffix(fs::path p, const std::string& suffix) {
  p += suffix;
  return p;
}

std::vector<std::vector<double>> windows(const signal::SampleSeries& s, std::size_t length) {
  std::vector<std::vector<double>> out;
  const auto& v = s.values();
  for (std::size_t b = 0; b + length <= v.size(); b += length) {
    out.emplace_back(v.begin() + static_cast<std::ptrdiff_t>(b), v.begin() + static_cast<std::ptrdiff_t>(b + length));
  }
  if (out.empty()) throw ContractError("input series is shorter than one segment");
  return out;
}

}  // namespace

Scenario make_scenario(const RunConfig& config) {
  const std::uint64_t seed = config.require_seed();
  const auto& sc = config.synth;
  std::mt19937_64 rng(seed + 5);
  signal::SynthConfig motion;
  motion.duration_s = static_cast<double>(sc.motion_samples()) / sc.sample_rate;
  motion.sample_rate = sc.sample_rate;
  motion.white_noise_sigma = sc.motion_noise_sigma;
  motion.rng_seed = seed + 6;
  const double spacing = motion.duration_s / static_cast<double>(sc.peak_count + 1);
  std::uniform_real_distribution<double> jitter(-0.25 * spacing, 0.25 * spacing);
  std::uniform_real_distribution<double> amp(sc.peak_min_amplitude, sc.peak_max_amplitude);
  std::uniform_real_distribution<double> width(sc.peak_min_width_s, sc.peak_max_width_s);
  std::bernoulli_distribution negative(0.5);
  for (std::size_t i = 0; i < sc.peak_count; ++i) {
    signal::PeakEvent e;
    e.center_time = static_cast<double>(i + 1) * spacing + jitter(rng);
    e.amplitude = amp(rng) * (negative(rng) ? -1.0 : 1.0);
    e.width_s = width(rng);
    motion.peak_events.push_back(e);
  }
  std::vector<double> values;
  if (sc.motion_samples() > 0) {
    const auto m = signal::synth_motion(motion);
    values.assign(m.clean.values().begin(), m.clean.values().end());
  }
  if (sc.static_samples() > 0) {
    signal::StaticNoiseConfig st;
    st.length = sc.static_samples();
    st.sample_rate = sc.sample_rate;
    st.bias = sc.static_bias;
    st.white_sigma = sc.static_white_sigma;
    st.bias_walk_sigma = sc.static_bias_walk_sigma;
    st.rng_seed = seed + 7;
    const auto quiet = signal::synth_static(st);
    values.insert(values.end(), quiet.values().begin(), quiet.values().end());
  }
  signal::SampleSeries clean(std::move(values), sc.sample_rate);
  auto clipped = signal::clip(clean, signal::ClipSpec(config.ore.model.clip_level));
  return Scenario{std::move(clean), std::move(clipped), std::move(motion.peak_events)};
}

std::vector<std::vector<double>> make_noise_segments(const RunConfig& config) {
  const std::uint64_t seed = config.require_seed();
  const std::size_t len = config.de.model.backbone.segment_length;
  signal::StaticNoiseConfig st;
  st.length = len * config.de.dataset_size;
  st.sample_rate = config.synth.sample_rate;
  st.bias = 0.0;
  st.white_sigma = config.de.noise_white_sigma;
  st.bias_walk_sigma = config.de.noise_bias_walk_sigma;
  st.rng_seed = seed + 3;
  return windows(signal::synth_static(st), len);
}

void cmd_synth(const RunConfig& config, const fs::path& out_dir) {
  const Scenario s = make_scenario(config);
  fs::create_directories(out_dir);
  signal::save_csv(out_dir / "clean.csv", s.clean);
  signal::save_csv(out_dir / "clipped.csv", s.clipped);
  nlohmann::ordered_json j;
  j["sample_rate"] = s.clean.sample_rate();
  j["clip_level"] = config.ore.model.clip_level;
  j["samples"] = s.clean.size();
  j["static_begin"] = config.synth.motion_samples();
  j["static_end"] = s.clean.size();
  j["seed"] = config.require_seed();
  auto& peaks = j["peaks"] = nlohmann::ordered_json::array();
  for (const auto& p : s.peaks) peaks.push_back({{"center_time", p.center_time}, {"amplitude", p.amplitude}, {"width_s", p.width_s}});
  auto out = open_out(out_dir / "truth.json");
  out << j.dump(2) << '\n';
  spdlog::info("synth: wrote {} samples with {} bursts to {}", s.clean.size(), s.peaks.size(), out_dir.string());
}

void cmd_train_ore(const RunConfig& config, const fs::path& out, const std::optional<fs::path>& input) {
  config.require_seed();
  std::vector<std::vector<double>> data;
  if (input) {
    data = windows(signal::load_csv(*input), config.ore.model.backbone.segment_length);
  } else {
    data = signal::make_peak_segments(config.ore.data);
  }
  spdlog::info("train-ore: {} segments, {} epochs", data.size(), config.ore.epochs);
  auto result = ore::train_ore(data, config.ore.model, config.ore.epochs);
  for (std::size_t i = 0; i < result.trace.epoch_loss.size(); ++i) {
    spdlog::debug("train-ore: epoch {} loss {:.6f}", i + 1, result.trace.epoch_loss[i]);
  }
  result.expert.save(out);
  write_loss_csv(with_suffix(out, ".loss.csv"), result.trace.epoch_loss);
  spdlog::info("train-ore: wrote {}", out.string());
}

void cmd_train_de(const RunConfig& config, const fs::path& out, const std::optional<fs::path>& input) {
  const std::uint64_t seed = config.require_seed();
  std::vector<std::vector<double>> data;
  if (input) {
    data = windows(signal::load_csv(*input), config.de.model.backbone.segment_length);
  } else {
    data = make_noise_segments(config);
  }
  spdlog::info("train-de: {} segments, {} epochs", data.size(), config.de.epochs);
  auto result = de::train_de(data, make_augment(config, seed), config.de.model, config.de.epochs);
  for (std::size_t i = 0; i < result.trace.epoch_loss.size(); ++i) {
    spdlog::debug("train-de: epoch {} loss {:.6f}", i + 1, result.trace.epoch_loss[i]);
  }
  result.expert.save(out);
  write_loss_csv(with_suffix(out, ".loss.csv"), result.trace.epoch_loss);
  spdlog::info("train-de: wrote {}", out.string());
}

void cmd_enhance(const RunConfig& config, const fs::path& input, const std::optional<fs::path>& ore_checkpoint,
                 const std::optional<fs::path>& de_checkpoint, const fs::path& out) {
  const auto series = signal::load_csv(input);
  std::optional<ore::OreExpert> peak;
  std::optional<de::DeExpert> denoise;
  if (ore_checkpoint) peak.emplace(ore::OreExpert::load(*ore_checkpoint));
  if (de_checkpoint) denoise.emplace(de::DeExpert::load(*de_checkpoint));
  const std::size_t len = config.gate.segment_length;
  if (peak && peak->config().backbone.segment_length != len) {
    throw ConfigError("over-range checkpoint segment length differs from gate.segment_length");
  }
  if (denoise && denoise->config().backbone.segment_length != len) {
    throw ConfigError("denoise checkpoint segment length differs from gate.segment_length");
  }
  const auto experts = gate::make_experts(peak ? &*peak : nullptr, denoise ? &*denoise : nullptr);
  const auto enhanced = gate::enhance(series, config.gate, experts);
  if (out.has_parent_path()) fs::create_directories(out.parent_path());
  signal::save_csv(out, enhanced);
  spdlog::info("enhance: wrote {} samples to {}", enhanced.size(), out.string());
}

void cmd_bench(const RunConfig& config, const fs::path& raw_path, const fs::path& enhanced_path,
               const fs::path& truth_path, const fs::path& out) {
  const auto raw = signal::load_csv(raw_path);
  const auto enhanced = signal::load_csv(enhanced_path);
  const auto truth = signal::load_csv(truth_path);
  if (raw.size() != truth.size() || enhanced.size() != truth.size()) {
    throw DimensionError("bench: raw, enhanced and truth series differ in length");
  }
  bench::ReportOptions options = config.metrics;
  if (options.static_region.end > truth.size()) {
    throw ConfigError("field 'metrics.static_end' lies past the end of the series");
  }
  const auto rep = bench::report(raw, enhanced, truth, options);
  {
    auto o = open_out(out);
    o << bench::to_json(rep);
  }
  fs::path curve_path = out;
  curve_path.replace_extension(".allan.csv");
  auto o = open_out(curve_path);
  o << "tau_s,raw_sigma,enhanced_sigma\n";
  if (!options.static_region.empty()) {
    const auto r = options.static_region;
    const auto span_of = [&](const signal::SampleSeries& s) {
      return std::span<const double>(s.values()).subspan(r.begin, r.end - r.begin);
    };
    const auto cr = bench::allan_deviation(span_of(raw), raw.sample_rate());
    const auto ce = bench::allan_deviation(span_of(enhanced), enhanced.sample_rate());
    for (std::size_t i = 0; i < cr.deviations.size(); ++i) {
      o << num(cr.cluster_times[i]) << ',' << num(cr.deviations[i]) << ',' << num(ce.deviations[i]) << '\n';
    }
  }
  spdlog::info("bench: wrote {} and {}", out.string(), curve_path.string());
}

void cmd_allan(const fs::path& input, const fs::path& out) {
  const auto series = signal::load_csv(input);
  const auto curve = bench::allan_deviation(series);
  auto o = open_out(out);
  o << "tau_s,sigma\n";
  for (std::size_t i = 0; i < curve.deviations.size(); ++i) {
    o << num(curve.cluster_times[i]) << ',' << num(curve.deviations[i]) << '\n';
  }
  spdlog::info("allan: {} cluster sizes written to {}", curve.deviations.size(), out.string());
}

}  // namespace gyromoe::cli

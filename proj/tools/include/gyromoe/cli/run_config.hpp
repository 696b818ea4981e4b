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
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "gyromoe/bench/report.hpp"
#include "gyromoe/de/de_expert.hpp"
#include "gyromoe/gate/gate.hpp"
#include "gyromoe/ore/ore_expert.hpp"
#include "gyromoe/signal/synth.hpp"

namespace gyromoe::cli {

/// Evaluation scenario: a motion section with over-range bursts followed by
/// a stationary section.
struct ScenarioSettings {
  double sample_rate = 100.0;
  double motion_s = 40.96;
  double static_s = 81.92;
  double motion_noise_sigma = 0.5;  // deg/s
  std::size_t peak_count = 12;
  double peak_min_amplitude = 600.0;  // deg/s
  double peak_max_amplitude = 900.0;
  double peak_min_width_s = 0.04;
  double peak_max_width_s = 0.10;
  double static_bias = 0.2;              // deg/s
  double static_white_sigma = 0.1;       // deg/s
  double static_bias_walk_sigma = 0.01;  // deg/s per sqrt(s)

  std::size_t motion_samples() const;
  std::size_t static_samples() const;
};

struct OreSettings {
  ore::OreConfig model;
  std::size_t epochs = 20;
  signal::PeakDatasetConfig data;
};

struct DeSettings {
  de::DeConfig model;
  std::size_t epochs = 10;
  std::size_t dataset_size = 512;  // noise segments
  double noise_white_sigma = 0.1;
  double noise_bias_walk_sigma = 0.01;
};

struct AugmentSettings {
  double beta = 20.0;
  double corruption_gain = 1.0;
  std::size_t snippet_count = 64;
  std::size_t snippet_length = 128;
};

struct RunConfig {
  std::optional<std::uint64_t> seed;
  ScenarioSettings synth;
  OreSettings ore;
  DeSettings de;
  AugmentSettings augment;
  gate::GateConfig gate;
  bench::ReportOptions metrics;

  std::uint64_t require_seed() const;
};

/// Reads a JSON document (or the defaults when `path` is empty), applies
/// `section.key=value` overrides and an optional seed, and validates.
RunConfig load_run_config(const std::filesystem::path& path, const std::vector<std::string>& overrides,
                          std::optional<std::uint64_t> seed);
RunConfig parse_run_config(const std::string& json_text, const std::vector<std::string>& overrides,
                           std::optional<std::uint64_t> seed);

/// Snippet pool and augmentation settings derived from the run seed.
de::AugmentConfig make_augment(const RunConfig& config, std::uint64_t seed);

}  // namespace gyromoe::cli

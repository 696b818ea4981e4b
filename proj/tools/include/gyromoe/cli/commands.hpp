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

#include <filesystem>
#include <optional>
#include <vector>

#include "gyromoe/cli/run_config.hpp"
#include "gyromoe/signal/series.hpp"
#include "gyromoe/signal/synth.hpp"

namespace gyromoe::cli {

struct Scenario {
  signal::SampleSeries clean;
  signal::SampleSeries clipped;
  std::vector<signal::PeakEvent> peaks;
};

/// Deterministic evaluation scenario for the configured seed.
Scenario make_scenario(const RunConfig& config);

/// Noise segments for denoiser training, synthesized from the run seed.
std::vector<std::vector<double>> make_noise_segments(const RunConfig& config);

/// Writes clean.csv, clipped.csv and truth.json into `out_dir`.
void cmd_synth(const RunConfig& config, const std::filesystem::path& out_dir);
/// Trains from `input` (clean wide-range CSV) or from synthetic segments;
/// writes the checkpoint and `<out>.loss.csv`.
void cmd_train_ore(const RunConfig& config, const std::filesystem::path& out,
                   const std::optional<std::filesystem::path>& input);
/// Trains from `input` (stationary-noise CSV) or from synthetic noise.
void cmd_train_de(const RunConfig& config, const std::filesystem::path& out,
                  const std::optional<std::filesystem::path>& input);
void cmd_enhance(const RunConfig& config, const std::filesystem::path& input,
                 const std::optional<std::filesystem::path>& ore_checkpoint,
                 const std::optional<std::filesystem::path>& de_checkpoint, const std::filesystem::path& out);
/// Writes the JSON report to `out` and the Allan curves of the static
/// region to `out` with extension `.allan.csv`.
void cmd_bench(const RunConfig& config, const std::filesystem::path& raw, const std::filesystem::path& enhanced,
               const std::filesystem::path& truth, const std::filesystem::path& out);
void cmd_allan(const std::filesystem::path& input, const std::filesystem::path& out);

}  // namespace gyromoe::cli

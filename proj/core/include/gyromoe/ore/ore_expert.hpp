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

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "gyromoe/diff/optim.hpp"
#include "gyromoe/mae/backbone.hpp"
#include "gyromoe/mae/params.hpp"
#include "gyromoe/ore/losses.hpp"
#include "gyromoe/signal/series.hpp"

namespace gyromoe::ore {

struct OreConfig {
  double clip_level = 450.0;  // deg/s
  LossWeights weights;
  mae::BackboneConfig backbone = default_backbone();
  diff::AdamConfig adam;
  std::size_t batch_size = 32;
  std::uint64_t seed = 0;

  /// Short patches so the threshold mask leaves the in-range flanks of a
  /// burst visible.
  static mae::BackboneConfig default_backbone();

  void validate() const;
  std::map<std::string, std::string> to_meta() const;
  static OreConfig from_meta(const std::map<std::string, std::string>& meta);
};

/// Over-range reconstruction expert: a backbone plus its parameters.
class OreExpert {
 public:
  explicit OreExpert(OreConfig config);
  OreExpert(OreConfig config, mae::ParamStore params);

  const OreConfig& config() const noexcept { return config_; }
  mae::ParamStore& params() noexcept { return params_; }
  const mae::ParamStore& params() const noexcept { return params_; }
  const mae::Backbone& backbone() const noexcept { return backbone_; }
  /// Clamps every GD-Attn width into the configured bounds.
  void clamp_sigma();

  /// Predictions for every position of a normalized segment.
  std::vector<double> predict(std::span<const double> normalized, const mae::MaskSet& mask) const;
  /// Replaces clipped samples of a physical-unit segment with model
  /// predictions; every other sample is returned untouched.
  std::vector<double> reconstruct(std::span<const double> clipped, std::size_t valid_length) const;
  std::vector<double> reconstruct(std::span<const double> clipped) const;
  signal::Segment reconstruct(const signal::Segment& clipped) const;

  void save(const std::filesystem::path& path) const;
  static OreExpert load(const std::filesystem::path& path);

 private:
  OreConfig config_;
  mae::ParamStore params_;
  mae::Backbone backbone_;
};

/// One self-supervised example: network input and target, both normalized.
struct OreSample {
  std::vector<double> input;
  std::vector<double> target;
  mae::MaskSet mask;
  std::vector<std::size_t> masked;
};

/// Clips a clean segment at the rail and builds the training pair. Returns
/// false when the segment has no clipped sample or is clipped everywhere.
bool make_ore_sample(std::span<const double> clean, const OreConfig& config, OreSample& out);

struct TrainTrace {
  std::vector<double> epoch_loss;  // mean loss per epoch
  std::vector<double> step_loss;   // mean loss per optimizer step
};

/// Continues training `expert` on clean segments (physical units).
TrainTrace train_ore(OreExpert& expert, std::span<const std::vector<double>> dataset, std::size_t epochs);

struct OreTrainResult {
  OreExpert expert;
  TrainTrace trace;
};
OreTrainResult train_ore(std::span<const std::vector<double>> dataset, const OreConfig& config, std::size_t epochs);

}  // namespace gyromoe::ore

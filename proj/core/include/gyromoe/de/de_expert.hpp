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
#include <utility>
#include <vector>

#include "gyromoe/de/augment.hpp"
#include "gyromoe/de/masks.hpp"
#include "gyromoe/diff/optim.hpp"
#include "gyromoe/mae/backbone.hpp"
#include "gyromoe/mae/params.hpp"

namespace gyromoe::de {

/// Which backbone halves the two branches share.
enum class WeightShare { None, Encoder, Decoder, Both };

std::string to_string(WeightShare share);
WeightShare parse_weight_share(const std::string& text);

struct DeConfig {
  mae::BackboneConfig backbone = default_backbone();
  WeightShare weight_share = WeightShare::Both;
  MaskPattern mask_pattern = MaskPattern::Cross;
  double mask_ratio = 0.5;
  diff::AdamConfig adam;
  std::size_t batch_size = 32;
  double sample_rate = 100.0;
  std::uint64_t seed = 0;

  static mae::BackboneConfig default_backbone();
  CrossMaskPair masks() const;
  void validate() const;
  std::map<std::string, std::string> to_meta() const;
  static DeConfig from_meta(const std::map<std::string, std::string>& meta);
};

/// Per-segment standardization of the network input.
struct Standardizer {
  double mean = 0.0;
  double scale = 1.0;

  static Standardizer fit(std::span<const double> x);
  std::vector<double> apply(std::span<const double> x) const;
  std::vector<double> invert(std::span<const double> z) const;
};

class DeExpert {
 public:
  explicit DeExpert(DeConfig config);
  DeExpert(DeConfig config, mae::ParamStore params);

  const DeConfig& config() const noexcept { return config_; }
  mae::ParamStore& params() noexcept { return params_; }
  const mae::ParamStore& params() const noexcept { return params_; }
  const mae::Backbone& branch_a() const noexcept { return branch_a_; }
  const mae::Backbone& branch_b() const noexcept { return branch_b_; }
  const CrossMaskPair& masks() const noexcept { return masks_; }

  /// Both branch reconstructions of one standardized input.
  std::pair<diff::Var, diff::Var> dual_forward(diff::Graph& g, std::span<const double> input) const;
  /// Sum of each branch's masked MSE against `target` on its own hidden samples.
  diff::Var branch_loss(diff::Graph& g, std::span<const double> input, std::span<const double> target,
                        std::size_t valid_length) const;

  /// Denoises a physical-unit segment; samples past `valid_length` are copied.
  std::vector<double> denoise(std::span<const double> segment, std::size_t valid_length) const;
  std::vector<double> denoise(std::span<const double> segment) const;

  void save(const std::filesystem::path& path) const;
  static DeExpert load(const std::filesystem::path& path);

 private:
  DeConfig config_;
  mae::ParamStore params_;
  mae::Backbone branch_a_;
  mae::Backbone branch_b_;
  CrossMaskPair masks_;
};

struct DeTrainTrace {
  std::vector<double> epoch_loss;
  std::vector<double> step_loss;
};

/// Trains on freshly augmented noise segments every epoch.
DeTrainTrace train_de(DeExpert& expert, std::span<const std::vector<double>> noise_dataset, const AugmentConfig& aug,
                      std::size_t epochs);

struct DeTrainResult {
  DeExpert expert;
  DeTrainTrace trace;
};
DeTrainResult train_de(std::span<const std::vector<double>> noise_dataset, const AugmentConfig& aug,
                       const DeConfig& config, std::size_t epochs);

}  // namespace gyromoe::de

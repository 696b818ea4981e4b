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
#include <functional>
#include <span>
#include <vector>

#include "gyromoe/diff/tensor.hpp"

namespace gyromoe::diff {

struct AdamConfig {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  double clip_norm = 1.0;  // global gradient-norm clip; <= 0 disables
  double decay_floor = 0.1;  // cosine decay target, as a fraction of learning_rate
};

/// Adaptive moment estimation over a fixed parameter list.
class Adam {
 public:
  Adam(std::vector<Param*> params, AdamConfig config);

  /// Clips the global gradient norm, applies one update and zeroes the
  /// gradients. Returns the pre-clip gradient norm.
  double step();

  /// Enables cosine decay from learning_rate to decay_floor * learning_rate
  /// over `total_steps` updates; 0 keeps the rate constant.
  void set_horizon(std::size_t total_steps) noexcept { horizon_ = total_steps; }
  /// Rate used by the next step.
  double current_learning_rate() const noexcept;

  std::size_t steps() const noexcept { return t_; }
  const AdamConfig& config() const noexcept { return config_; }

 private:
  std::vector<Param*> params_;
  std::vector<Tensor> m_;
  std::vector<Tensor> v_;
  AdamConfig config_;
  std::size_t t_ = 0;
  std::size_t horizon_ = 0;
};

}  // namespace gyromoe::diff

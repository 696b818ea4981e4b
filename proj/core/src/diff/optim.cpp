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

#include "gyromoe/diff/optim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace gyromoe::diff {

Adam::Adam(std::vector<Param*> params, AdamConfig config) : params_(std::move(params)), config_(config) {
  for (const Param* p : params_) {
    m_.emplace_back(p->value.shape());
    v_.emplace_back(p->value.shape());
  }
}

double Adam::current_learning_rate() const noexcept {
  if (horizon_ == 0) return config_.learning_rate;
  const double progress = std::min(1.0, static_cast<double>(t_) / static_cast<double>(horizon_));
  const double cosine = 0.5 * (1.0 + std::cos(std::numbers::pi * progress));
  return config_.learning_rate * (config_.decay_floor + (1.0 - config_.decay_floor) * cosine);
}

double Adam::step() {
  const double lr = current_learning_rate();
  double norm_sq = 0.0;
  for (const Param* p : params_)
    for (double g : p->grad.data()) norm_sq += g * g;
  const double norm = std::sqrt(norm_sq);
  const double factor = (config_.clip_norm > 0.0 && norm > config_.clip_norm) ? config_.clip_norm / norm : 1.0;

  ++t_;
  const double bc1 = 1.0 - std::pow(config_.beta1, static_cast<double>(t_));
  const double bc2 = 1.0 - std::pow(config_.beta2, static_cast<double>(t_));
  for (std::size_t k = 0; k < params_.size(); ++k) {
    Param& p = *params_[k];
    Tensor& m = m_[k];
    Tensor& v = v_[k];
    for (std::size_t i = 0; i < p.value.size(); ++i) {
      const double g = p.grad[i] * factor;
      m[i] = config_.beta1 * m[i] + (1.0 - config_.beta1) * g;
      v[i] = config_.beta2 * v[i] + (1.0 - config_.beta2) * g * g;
      const double m_hat = m[i] / bc1;
      const double v_hat = v[i] / bc2;
      p.value[i] -= lr * m_hat / (std::sqrt(v_hat) + config_.epsilon);
    }
    p.zero_grad();
  }
  return norm;
}

}  // namespace gyromoe::diff

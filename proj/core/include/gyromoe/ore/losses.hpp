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

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "gyromoe/diff/graph.hpp"
#include "gyromoe/mae/backbone.hpp"

namespace gyromoe::ore {

inline constexpr double kClipEpsilon = 1e-6;

/// Loss weights of the over-range objective.
struct LossWeights {
  double l2 = 1.0;
  double corr = 0.5;
  double pinn = 0.2;
  double sign = 1.0;   // weight of the extremum term inside the correlation loss
  double kappa = 1.0;  // balance of the energy barrier

  void validate() const;
};

/// True when a normalized sample sits on the rail.
inline bool is_clipped(double normalized, double eps = kClipEpsilon) { return !(std::abs(normalized) < 1.0 - eps); }

/// Hides every patch holding at least one sample with |x| >= 1 - eps.
/// `valid_length` excludes zero padding from consideration.
mae::MaskSet threshold_mask(std::span<const double> normalized, std::size_t patch_len, std::size_t valid_length,
                            double eps = kClipEpsilon);
mae::MaskSet threshold_mask(std::span<const double> normalized, std::size_t patch_len, double eps = kClipEpsilon);

/// Masked indices t (t >= 1, t + 1 < size) where the first difference of `x`
/// changes sign between t and t + 1.
std::vector<std::size_t> extrema_set(std::span<const double> x, std::span<const std::size_t> masked);

/// Indices t of `masked` with t - 2 >= 0 and t + 1 < limit.
std::vector<std::size_t> pinn_indices(std::span<const std::size_t> masked, std::size_t limit);

diff::Var masked_mse(diff::Var x_hat, std::span<const double> x, std::span<const std::size_t> masked);
diff::Var corr_loss(diff::Var x_hat, std::span<const double> x, std::span<const std::size_t> masked,
                    double lambda_sign);
diff::Var pinn_loss(diff::Var x_hat, std::span<const std::size_t> masked, double kappa);
diff::Var ore_total_loss(diff::Var x_hat, std::span<const double> x, std::span<const std::size_t> masked,
                         const LossWeights& weights);

double corr_loss(std::span<const double> x, std::span<const double> x_hat, std::span<const std::size_t> masked,
                 double lambda_sign);
double pinn_loss(std::span<const double> x_hat, std::span<const std::size_t> masked, double kappa);
double ore_total_loss(std::span<const double> x, std::span<const double> x_hat, std::span<const std::size_t> masked,
                      const LossWeights& weights);

/// Mean specific power over the usable indices, before the sigmoid.
double mean_specific_power(std::span<const double> x_hat, std::span<const std::size_t> masked);
/// -log(e) - kappa * log(1 - e) for e in (0, 1).
double energy_barrier(double e_norm, double kappa);

}  // namespace gyromoe::ore

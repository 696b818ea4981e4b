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

#include "gyromoe/ore/losses.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gyromoe/diff/ops.hpp"
#include "gyromoe/error.hpp"

namespace gyromoe::ore {

using diff::Graph;
using diff::Shape;
using diff::Tensor;
using diff::Var;

void LossWeights::validate() const {
  if (l2 < 0.0 || corr < 0.0 || pinn < 0.0 || sign < 0.0) throw ContractError("loss weights must be non-negative");
  if (!(kappa > 0.0)) throw ContractError("kappa must be positive");
}

mae::MaskSet threshold_mask(std::span<const double> normalized, std::size_t patch_len, std::size_t valid_length,
                            double eps) {
  if (patch_len == 0 || normalized.size() % patch_len != 0) {
    throw ContractError("threshold_mask: patch length must divide the segment length");
  }
  const std::size_t n = normalized.size() / patch_len;
  const std::size_t limit = std::min(valid_length, normalized.size());
  std::vector<std::size_t> hidden;
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t k = 0; k < patch_len; ++k) {
      const std::size_t t = p * patch_len + k;
      if (t < limit && is_clipped(normalized[t], eps)) {
        hidden.push_back(p);
        break;
      }
    }
  }
  return mae::MaskSet(n, std::move(hidden));
}

mae::MaskSet threshold_mask(std::span<const double> normalized, std::size_t patch_len, double eps) {
  return threshold_mask(normalized, patch_len, normalized.size(), eps);
}

namespace {

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

void check_lengths(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw DimensionError(std::string(what) + ": target has " + std::to_string(b) + " samples, prediction " +
                         std::to_string(a));
  }
}

void check_indices(std::span<const std::size_t> masked, std::size_t n, const char* what) {
  if (masked.empty()) throw ContractError(std::string(what) + ": empty mask");
  for (std::size_t t : masked)
    if (t >= n) throw ContractError(std::string(what) + ": mask index outside the segment");
}

std::vector<std::size_t> shifted(std::span<const std::size_t> idx, long offset) {
  std::vector<std::size_t> out;
  out.reserve(idx.size());
  for (std::size_t t : idx) out.push_back(static_cast<std::size_t>(static_cast<long>(t) + offset));
  return out;
}

Var vector_constant(Graph& g, std::vector<double> values) { return g.constant(Tensor::vector(std::move(values))); }

}  // namespace

std::vector<std::size_t> extrema_set(std::span<const double> x, std::span<const std::size_t> masked) {
  std::vector<std::size_t> out;
  for (std::size_t t : masked) {
    if (t < 1 || t + 1 >= x.size()) continue;
    if (sign_of(x[t] - x[t - 1]) != sign_of(x[t + 1] - x[t])) out.push_back(t);
  }
  return out;
}

std::vector<std::size_t> pinn_indices(std::span<const std::size_t> masked, std::size_t limit) {
  std::vector<std::size_t> out;
  for (std::size_t t : masked)
    if (t >= 2 && t + 1 < limit) out.push_back(t);
  return out;
}

Var masked_mse(Var x_hat, std::span<const double> x, std::span<const std::size_t> masked) {
  check_lengths(x_hat.value().size(), x.size(), "masked_mse");
  check_indices(masked, x.size(), "masked_mse");
  Graph& g = x_hat.graph();
  std::vector<double> target;
  for (std::size_t t : masked) target.push_back(x[t]);
  return diff::mean(diff::square(diff::sub(diff::gather(x_hat, masked), vector_constant(g, std::move(target)))));
}

Var corr_loss(Var x_hat, std::span<const double> x, std::span<const std::size_t> masked, double lambda_sign) {
  check_lengths(x_hat.value().size(), x.size(), "corr_loss");
  check_indices(masked, x.size(), "corr_loss");
  Graph& g = x_hat.graph();
  std::vector<std::size_t> slope_idx;
  for (std::size_t t : masked)
    if (t >= 1) slope_idx.push_back(t);
  Var total = g.constant(Tensor::scalar(0.0));
  if (!slope_idx.empty()) {
    const auto prev = shifted(slope_idx, -1);
    std::vector<double> dx;
    for (std::size_t t : slope_idx) dx.push_back(x[t] - x[t - 1]);
    Var dxh = diff::sub(diff::gather(x_hat, slope_idx), diff::gather(x_hat, prev));
    total = diff::mean(diff::square(diff::sub(vector_constant(g, std::move(dx)), dxh)));
  }
  const auto extrema = extrema_set(x, masked);
  if (!extrema.empty() && lambda_sign != 0.0) {
    std::vector<double> xe;
    for (std::size_t t : extrema) xe.push_back(x[t]);
    Var term = diff::mean(diff::square(diff::sub(vector_constant(g, std::move(xe)), diff::gather(x_hat, extrema))));
    total = diff::add(total, diff::scale(term, lambda_sign));
  }
  return total;
}

Var pinn_loss(Var x_hat, std::span<const std::size_t> masked, double kappa) {
  if (!(kappa > 0.0)) throw ContractError("pinn_loss: kappa must be positive");
  const std::size_t n = x_hat.value().size();
  const auto idx = pinn_indices(masked, n);
  if (idx.empty()) throw ContractError("pinn_loss: no masked index has the neighbours t-2..t+1");
  Var xp1 = diff::gather(x_hat, shifted(idx, 1));
  Var x0 = diff::gather(x_hat, idx);
  Var xm1 = diff::gather(x_hat, shifted(idx, -1));
  Var xm2 = diff::gather(x_hat, shifted(idx, -2));
  // (d2x[t-1] + d2x[t]) / 2 with d2x[t] = x[t+1] - 2x[t] + x[t-1]
  Var accel = diff::scale(diff::add(diff::sub(xp1, x0), diff::sub(xm2, xm1)), 0.5);
  Var vel = diff::sub(x0, xm1);
  Var e_bar = diff::mean(diff::mul(accel, vel));
  Var lo = diff::log(diff::sigmoid(e_bar));
  Var hi = diff::log(diff::sigmoid(diff::scale(e_bar, -1.0)));
  return diff::scale(diff::add(lo, diff::scale(hi, kappa)), -1.0);
}

Var ore_total_loss(Var x_hat, std::span<const double> x, std::span<const std::size_t> masked,
                   const LossWeights& w) {
  w.validate();
  Var total = diff::scale(masked_mse(x_hat, x, masked), w.l2);
  if (w.corr != 0.0) total = diff::add(total, diff::scale(corr_loss(x_hat, x, masked, w.sign), w.corr));
  if (w.pinn != 0.0) total = diff::add(total, diff::scale(pinn_loss(x_hat, masked, w.kappa), w.pinn));
  return total;
}

double corr_loss(std::span<const double> x, std::span<const double> x_hat, std::span<const std::size_t> masked,
                 double lambda_sign) {
  Graph g;
  Var xh = g.constant(Tensor::vector({x_hat.begin(), x_hat.end()}));
  return corr_loss(xh, x, masked, lambda_sign).value().item();
}

double pinn_loss(std::span<const double> x_hat, std::span<const std::size_t> masked, double kappa) {
  Graph g;
  Var xh = g.constant(Tensor::vector({x_hat.begin(), x_hat.end()}));
  return pinn_loss(xh, masked, kappa).value().item();
}

double ore_total_loss(std::span<const double> x, std::span<const double> x_hat, std::span<const std::size_t> masked,
                      const LossWeights& weights) {
  Graph g;
  Var xh = g.constant(Tensor::vector({x_hat.begin(), x_hat.end()}));
  return ore_total_loss(xh, x, masked, weights).value().item();
}

double mean_specific_power(std::span<const double> x, std::span<const std::size_t> masked) {
  const auto idx = pinn_indices(masked, x.size());
  if (idx.empty()) throw ContractError("mean_specific_power: no usable index");
  double acc = 0.0;
  for (std::size_t t : idx) {
    const double d2_prev = x[t] - 2.0 * x[t - 1] + x[t - 2];
    const double d2_here = x[t + 1] - 2.0 * x[t] + x[t - 1];
    acc += 0.5 * (d2_prev + d2_here) * (x[t] - x[t - 1]);
  }
  return acc / static_cast<double>(idx.size());
}

double energy_barrier(double e_norm, double kappa) {
  if (!(e_norm > 0.0 && e_norm < 1.0)) throw ContractError("energy_barrier: E_norm must lie in (0, 1)");
  return -std::log(e_norm) - kappa * std::log1p(-e_norm);
}

}  // namespace gyromoe::ore

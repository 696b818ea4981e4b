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

#include "gyromoe/bench/baselines.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "gyromoe/error.hpp"

namespace gyromoe::bench {

std::vector<double> savgol_weights(std::size_t left, std::size_t right, std::size_t order) {
  const std::size_t count = left + right + 1;
  const std::size_t deg = std::min(order, count - 1);
  Eigen::MatrixXd a(count, deg + 1);
  for (std::size_t r = 0; r < count; ++r) {
    const double u = static_cast<double>(r) - static_cast<double>(left);
    double p = 1.0;
    for (std::size_t c = 0; c <= deg; ++c, p *= u) a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = p;
  }
  // Row 0 of the pseudo-inverse maps samples to the fitted value at offset 0.
  const Eigen::MatrixXd pinv = a.completeOrthogonalDecomposition().pseudoInverse();
  std::vector<double> w(count);
  for (std::size_t r = 0; r < count; ++r) w[r] = pinv(0, static_cast<Eigen::Index>(r));
  return w;
}

std::vector<double> savgol(std::span<const double> x, std::size_t window, std::size_t order) {
  if (window == 0 || window % 2 == 0) throw ContractError("savgol: window must be odd");
  if (order >= window) throw ContractError("savgol: order must be below the window length");
  const std::size_t half = window / 2;
  const std::size_t n = x.size();
  std::vector<double> out(n);
  const auto centre = savgol_weights(half, half, order);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t left = std::min(half, i);
    const std::size_t right = std::min(half, n - 1 - i);
    const auto w = (left == half && right == half) ? centre : savgol_weights(left, right, order);
    double acc = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k) acc += w[k] * x[i - left + k];
    out[i] = acc;
  }
  return out;
}

signal::SampleSeries savgol(const signal::SampleSeries& series, std::size_t window, std::size_t order) {
  return signal::SampleSeries(savgol(series.values(), window, order), series.sample_rate());
}

ExtrapolationResult poly_extrapolate_peaks(std::span<const double> clipped, const signal::ClipSpec& clip,
                                           std::size_t order, std::size_t flank, double clip_eps) {
  if (flank < order + 1) throw ContractError("poly_extrapolate_peaks: flank must be at least order + 1");
  const double rail = clip.level * (1.0 - clip_eps);
  const auto is_clipped = [&](double v) { return !(std::abs(v) < rail); };
  const std::size_t n = clipped.size();
  ExtrapolationResult res;
  res.values.assign(clipped.begin(), clipped.end());
  for (std::size_t t = 0; t < n;) {
    if (!is_clipped(clipped[t])) {
      ++t;
      continue;
    }
    std::size_t e = t;
    while (e < n && is_clipped(clipped[e])) ++e;
    const ClippedRun run{t, e};
    t = e;
    bool clean = run.begin >= flank && run.end + flank <= n;
    for (std::size_t k = 1; clean && k <= flank; ++k)
      clean = !is_clipped(clipped[run.begin - k]) && !is_clipped(clipped[run.end + k - 1]);
    if (!clean) {
      res.skipped.push_back(run);
      continue;
    }
    // Abscissa centred on the run and scaled to unit half-width for conditioning.
    const double mid = 0.5 * (static_cast<double>(run.begin) + static_cast<double>(run.end - 1));
    const double half = 0.5 * static_cast<double>(run.end - run.begin + 1) + static_cast<double>(flank);
    Eigen::MatrixXd a(static_cast<Eigen::Index>(2 * flank), static_cast<Eigen::Index>(order + 1));
    Eigen::VectorXd b(static_cast<Eigen::Index>(2 * flank));
    Eigen::Index row = 0;
    const auto add_row = [&](std::size_t idx) {
      const double u = (static_cast<double>(idx) - mid) / half;
      double p = 1.0;
      for (std::size_t c = 0; c <= order; ++c, p *= u) a(row, static_cast<Eigen::Index>(c)) = p;
      b(row++) = clipped[idx];
    };
    for (std::size_t k = flank; k >= 1; --k) add_row(run.begin - k);
    for (std::size_t k = 0; k < flank; ++k) add_row(run.end + k);
    const Eigen::VectorXd coef = a.colPivHouseholderQr().solve(b);
    for (std::size_t i = run.begin; i < run.end; ++i) {
      const double u = (static_cast<double>(i) - mid) / half;
      double acc = 0.0;
      for (std::size_t c = order + 1; c-- > 0;) acc = acc * u + coef(static_cast<Eigen::Index>(c));
      res.values[i] = acc;
    }
    res.repaired.push_back(run);
  }
  return res;
}

}  // namespace gyromoe::bench

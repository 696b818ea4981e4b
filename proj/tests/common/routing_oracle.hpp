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
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "gyromoe/gate/gate.hpp"

namespace gyromoe::test_support {

/// Sample-by-sample reading of the routing algorithm, kept free of the
/// range bookkeeping used by the library. After a quiet window is replaced
/// the scan resumes at the first sample past the window.
inline std::vector<double> routing_oracle(std::span<const double> x, const gate::GateConfig& cfg,
                                       const gate::Experts& experts) {
  const std::size_t L = x.size();
  const std::size_t n = cfg.quiet_run;
  const double tau = cfg.quiet_threshold > 0.0 ? cfg.quiet_threshold : 0.1 * cfg.clip_level;
  const auto clipped = [&](double v) { return std::abs(v) >= cfg.clip_level * (1.0 - cfg.clip_eps); };
  const auto quiet_window = [&](std::size_t t) {
    if (t + n > L) return false;
    for (std::size_t i = t; i < t + n; ++i)
      if (!(std::abs(x[i]) < tau)) return false;
    return true;
  };

  std::vector<double> y(x.begin(), x.end());

  bool peak = false;
  std::size_t run = 0;
  for (std::size_t t = 0; t < L; ++t) {
    run = clipped(x[t]) ? run + 1 : 0;
    if (run >= cfg.peak_run) peak = true;
  }
  bool noise = false;
  for (std::size_t t = 0; t < L; ++t)
    if (quiet_window(t)) noise = true;

  std::vector<double> p_hat, n_hat;
  if (peak) p_hat = experts.peak(x, L);
  if (noise) n_hat = experts.denoise(x, L);

  std::size_t t = 0;
  while (t < L) {
    if (peak && clipped(x[t])) {
      y[t] = p_hat[t];
      ++t;
    } else if (noise && quiet_window(t)) {
      for (std::size_t i = t; i < t + n; ++i) y[i] = n_hat[i];
      t += n;
    } else {
      ++t;
    }
  }
  return y;
}

enum class SegmentKind { PeakOnly, NoiseOnly, Both, PassThrough };

/// Random segment built to exercise one routing outcome. Motion samples sit
/// well above the quiet threshold and below the rail.
inline std::vector<double> random_gate_segment(SegmentKind kind, const gate::GateConfig& cfg, std::mt19937_64& rng) {
  const std::size_t L = cfg.segment_length;
  const double level = cfg.clip_level;
  const double tau = cfg.quiet_threshold > 0.0 ? cfg.quiet_threshold : 0.1 * level;
  std::uniform_real_distribution<double> motion(1.5 * tau, 0.9 * level);
  std::uniform_real_distribution<double> quiet(-0.9 * tau, 0.9 * tau);
  std::bernoulli_distribution sign(0.5);
  std::vector<double> x(L);
  for (double& v : x) v = sign(rng) ? motion(rng) : -motion(rng);

  const bool want_peak = kind == SegmentKind::PeakOnly || kind == SegmentKind::Both;
  const bool want_noise = kind == SegmentKind::NoiseOnly || kind == SegmentKind::Both;
  // A quiet stretch one sample too short to fire the noise route.
  if (!want_noise) {
    std::uniform_int_distribution<std::size_t> start(0, L - cfg.quiet_run);
    const std::size_t s = start(rng);
    for (std::size_t i = s; i + 1 < s + cfg.quiet_run; ++i) x[i] = quiet(rng);
  }
  const double rail = level * (sign(rng) ? 1.0 : -1.0);
  if (want_peak) {
    std::uniform_int_distribution<std::size_t> len(cfg.peak_run, 3 * cfg.peak_run);
    const std::size_t l = len(rng);
    std::uniform_int_distribution<std::size_t> start(0, L / 2 - l - 2);
    const std::size_t s = start(rng);
    for (std::size_t i = s; i < s + l; ++i) x[i] = rail;
    x[s + l + 1] = -rail;  // lone clipped sample, replaced only because the peak route fires
  } else {
    // A clipped run one sample too short to fire the peak route.
    std::uniform_int_distribution<std::size_t> start(0, L - cfg.peak_run);
    const std::size_t s = start(rng);
    for (std::size_t i = s; i + 1 < s + cfg.peak_run; ++i) x[i] = rail;
  }
  if (want_noise) {
    std::uniform_int_distribution<std::size_t> len(cfg.quiet_run, 3 * cfg.quiet_run);
    const std::size_t l = std::min(len(rng), L / 2);
    std::uniform_int_distribution<std::size_t> start(want_peak ? L / 2 : 0, L - l);
    const std::size_t s = start(rng);
    for (std::size_t i = s; i < s + l; ++i) x[i] = quiet(rng);
  }
  return x;
}

}  // namespace gyromoe::test_support

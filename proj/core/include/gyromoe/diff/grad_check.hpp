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
#include <functional>
#include <span>
#include <vector>

#include "gyromoe/diff/graph.hpp"

namespace gyromoe::diff {

struct GradCheckReport {
  double max_rel_error = 0.0;
  double max_abs_error = 0.0;
  std::size_t checked = 0;
  bool passed = false;
};

struct GradCheckOptions {
  double eps = 1e-5;
  double tol = 1e-4;
  /// Relative error is |a - n| / max(|a|, |n|, floor); keeps entries whose
  /// true gradient is ~0 from reporting pure round-off as relative error.
  double floor = 1e-6;
  /// Upper bound on probed entries per parameter (0 = all).
  std::size_t max_entries_per_param = 0;
  std::uint64_t sample_seed = 0;
};

using ParamFn = std::function<Var(Graph&)>;
using InputFn = std::function<Var(Graph&, std::span<const Var>)>;

/// Compares reverse-mode gradients of a scalar function of `params` with
/// central finite differences.
GradCheckReport grad_check(const ParamFn& f, std::span<Param* const> params,
                           const GradCheckOptions& options = {});

/// Convenience form over plain input tensors.
GradCheckReport grad_check(const InputFn& f, std::vector<Tensor> inputs,
                           const GradCheckOptions& options = {});

}  // namespace gyromoe::diff

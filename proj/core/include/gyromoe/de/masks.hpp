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
#include <span>
#include <string>
#include <vector>

#include "gyromoe/mae/backbone.hpp"

namespace gyromoe::de {

/// Two complementary patch masks: every patch is hidden in exactly one branch.
struct CrossMaskPair {
  mae::MaskSet mask_a;
  mae::MaskSet mask_b;

  std::size_t num_patches() const noexcept { return mask_a.num_patches(); }
};

enum class MaskPattern { Cross, Block, Random };

std::string to_string(MaskPattern pattern);
MaskPattern parse_mask_pattern(const std::string& text);

/// Branch A hides odd patches, branch B hides even ones.
CrossMaskPair cross_masks(std::size_t num_patches);
/// Branch A hides the first round(ratio * n) patches, branch B the rest.
CrossMaskPair block_masks(std::size_t num_patches, double ratio = 0.5);
/// Branch A hides round(ratio * n) patches drawn from `seed`, branch B the rest.
CrossMaskPair random_masks(std::size_t num_patches, double ratio, std::uint64_t seed);
CrossMaskPair make_masks(MaskPattern pattern, std::size_t num_patches, double ratio, std::uint64_t seed);

/// Takes y_a on the patches hidden in branch A and y_b on those hidden in B.
std::vector<double> fuse(std::span<const double> y_a, std::span<const double> y_b, const CrossMaskPair& pair);

}  // namespace gyromoe::de

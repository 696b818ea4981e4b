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

#include "gyromoe/de/masks.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "gyromoe/error.hpp"

namespace gyromoe::de {

std::string to_string(MaskPattern pattern) {
  switch (pattern) {
    case MaskPattern::Cross: return "cross";
    case MaskPattern::Block: return "block";
    case MaskPattern::Random: return "random";
  }
  return "cross";
}

MaskPattern parse_mask_pattern(const std::string& text) {
  if (text == "cross") return MaskPattern::Cross;
  if (text == "block") return MaskPattern::Block;
  if (text == "random") return MaskPattern::Random;
  throw ConfigError("mask pattern must be one of cross|block|random, got '" + text + "'");
}

namespace {

void require_two(std::size_t n) {
  if (n < 2) throw ContractError("complementary masks need at least 2 patches, got " + std::to_string(n));
}

std::size_t hidden_count(std::size_t n, double ratio) {
  if (!(ratio > 0.0 && ratio < 1.0)) throw ContractError("mask ratio must lie in (0, 1)");
  const auto k = static_cast<std::size_t>(std::lround(ratio * static_cast<double>(n)));
  return std::clamp<std::size_t>(k, 1, n - 1);
}

CrossMaskPair complement_of(std::size_t n, std::vector<std::size_t> hidden_a) {
  mae::MaskSet a(n, std::move(hidden_a));
  return CrossMaskPair{a, mae::MaskSet(n, a.visible())};
}

}  // namespace

CrossMaskPair cross_masks(std::size_t n) {
  require_two(n);
  std::vector<std::size_t> odd;
  for (std::size_t i = 1; i < n; i += 2) odd.push_back(i);
  return complement_of(n, std::move(odd));
}

CrossMaskPair block_masks(std::size_t n, double ratio) {
  require_two(n);
  std::vector<std::size_t> head(hidden_count(n, ratio));
  std::iota(head.begin(), head.end(), 0);
  return complement_of(n, std::move(head));
}

CrossMaskPair random_masks(std::size_t n, double ratio, std::uint64_t seed) {
  require_two(n);
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(hidden_count(n, ratio));
  return complement_of(n, std::move(all));
}

CrossMaskPair make_masks(MaskPattern pattern, std::size_t n, double ratio, std::uint64_t seed) {
  switch (pattern) {
    case MaskPattern::Cross: return cross_masks(n);
    case MaskPattern::Block: return block_masks(n, ratio);
    case MaskPattern::Random: return random_masks(n, ratio, seed);
  }
  return cross_masks(n);
}

std::vector<double> fuse(std::span<const double> y_a, std::span<const double> y_b, const CrossMaskPair& pair) {
  if (y_a.size() != y_b.size()) throw DimensionError("fuse: branch outputs differ in length");
  const std::size_t n = pair.num_patches();
  if (n == 0 || y_a.size() % n != 0) throw DimensionError("fuse: output length is not a multiple of the patch count");
  const std::size_t p = y_a.size() / n;
  std::vector<double> out(y_a.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& src = pair.mask_a.is_hidden(i) ? y_a : y_b;
    std::copy_n(src.begin() + static_cast<std::ptrdiff_t>(i * p), p, out.begin() + static_cast<std::ptrdiff_t>(i * p));
  }
  return out;
}

}  // namespace gyromoe::de

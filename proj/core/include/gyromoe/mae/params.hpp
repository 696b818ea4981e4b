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
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gyromoe/diff/tensor.hpp"

namespace gyromoe::mae {

/// Ordered, named collection of learnable arrays. Param addresses are stable
/// for the lifetime of the store, so model views may hold raw pointers.
class ParamStore {
 public:
  ParamStore() = default;
  ParamStore(const ParamStore&) = delete;
  ParamStore& operator=(const ParamStore&) = delete;
  ParamStore(ParamStore&&) noexcept = default;
  ParamStore& operator=(ParamStore&&) noexcept = default;

  diff::Param& add(std::string name, diff::Tensor init);
  diff::Param& at(std::string_view name);
  const diff::Param& at(std::string_view name) const;
  bool contains(std::string_view name) const;

  std::size_t size() const noexcept { return entries_.size(); }
  /// Total number of scalar parameters.
  std::size_t scalar_count() const;
  const std::string& name(std::size_t i) const { return entries_[i].first; }
  diff::Param& operator[](std::size_t i) { return *entries_[i].second; }
  const diff::Param& operator[](std::size_t i) const { return *entries_[i].second; }

  std::vector<diff::Param*> all();
  void zero_grad();

 private:
  std::vector<std::pair<std::string, std::unique_ptr<diff::Param>>> entries_;
};

}  // namespace gyromoe::mae

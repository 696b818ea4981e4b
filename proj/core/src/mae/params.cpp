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

#include "gyromoe/mae/params.hpp"

#include "gyromoe/error.hpp"

namespace gyromoe::mae {

diff::Param& ParamStore::add(std::string name, diff::Tensor init) {
  if (contains(name)) throw ContractError("duplicate parameter name '" + name + "'");
  entries_.emplace_back(std::move(name), std::make_unique<diff::Param>(std::move(init)));
  return *entries_.back().second;
}

diff::Param& ParamStore::at(std::string_view name) {
  for (auto& [n, p] : entries_)
    if (n == name) return *p;
  throw ContractError("unknown parameter '" + std::string(name) + "'");
}

const diff::Param& ParamStore::at(std::string_view name) const {
  for (const auto& [n, p] : entries_)
    if (n == name) return *p;
  throw ContractError("unknown parameter '" + std::string(name) + "'");
}

bool ParamStore::contains(std::string_view name) const {
  for (const auto& entry : entries_)
    if (entry.first == name) return true;
  return false;
}

std::size_t ParamStore::scalar_count() const {
  std::size_t n = 0;
  for (const auto& entry : entries_) n += entry.second->value.size();
  return n;
}

std::vector<diff::Param*> ParamStore::all() {
  std::vector<diff::Param*> out;
  out.reserve(entries_.size());
  for (auto& entry : entries_) out.push_back(entry.second.get());
  return out;
}

void ParamStore::zero_grad() {
  for (auto& entry : entries_) entry.second->zero_grad();
}

}  // namespace gyromoe::mae

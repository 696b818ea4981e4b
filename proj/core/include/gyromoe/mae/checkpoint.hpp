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

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>

#include "gyromoe/mae/params.hpp"

namespace gyromoe::mae {

inline constexpr const char* kCheckpointTag = "gyromoe-ckpt-v1";

/// Named double-precision arrays plus string metadata.
///
/// Layout: a text manifest
///
///     gyromoe-ckpt-v1
///     meta <key> <value>
///     tensor <name> <rank> <dim>... <byte offset>
///     end
///
/// followed by the little-endian values of every tensor, concatenated in
/// manifest order; offsets are relative to the first byte after `end\n`.
struct Checkpoint {
  ParamStore params;
  std::map<std::string, std::string> meta;
};

void write_checkpoint(std::ostream& out, const ParamStore& params, const std::map<std::string, std::string>& meta);
Checkpoint read_checkpoint(std::istream& in);

void save_checkpoint(const std::filesystem::path& path, const ParamStore& params,
                     const std::map<std::string, std::string>& meta);
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace gyromoe::mae

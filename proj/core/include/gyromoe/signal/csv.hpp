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

#include "gyromoe/signal/series.hpp"

namespace gyromoe::signal {

/// Reads a two-column `t,omega` file. The sample rate is inferred from the
/// median time step; steps deviating from it by more than 1e-6 relative are
/// rejected with FormatError. Malformed rows raise ParseError.
SampleSeries load_csv(const std::filesystem::path& path);
SampleSeries read_csv(std::istream& in);

void save_csv(const std::filesystem::path& path, const SampleSeries& series);
void write_csv(std::ostream& out, const SampleSeries& series);

}  // namespace gyromoe::signal

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

#include "gyromoe/signal/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "gyromoe/error.hpp"

namespace gyromoe::signal {
namespace {

constexpr double kJitterTolerance = 1e-6;

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  return s;
}

double parse_number(std::string_view field, std::size_t line, const char* column) {
  field = trim(field);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw ParseError(line, std::string("cannot parse ") + column + " value '" + std::string(field) + "'");
  }
  if (!std::isfinite(value)) {
    throw ParseError(line, std::string("non-finite ") + column + " value");
  }
  return value;
}

}  // namespace

SampleSeries read_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw ParseError(1, "missing header");
  ++line_no;
  if (trim(line) != "t,omega") throw ParseError(1, "expected header 't,omega'");

  std::vector<double> t;
  std::vector<double> omega;
  while (std::getline(in, line)) {
    ++line_no;
    const auto row = trim(line);
    if (row.empty()) continue;
    const auto comma = row.find(',');
    if (comma == std::string_view::npos || row.find(',', comma + 1) != std::string_view::npos) {
      throw ParseError(line_no, "expected exactly two columns");
    }
    t.push_back(parse_number(row.substr(0, comma), line_no, "t"));
    omega.push_back(parse_number(row.substr(comma + 1), line_no, "omega"));
  }
  if (t.size() < 2) throw FormatError("at least two rows are needed to infer the sample rate");

  std::vector<double> steps(t.size() - 1);
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    steps[i] = t[i + 1] - t[i];
    if (!(steps[i] > 0.0)) {
      throw FormatError("t is not strictly increasing at row " + std::to_string(i + 3));
    }
  }
  std::vector<double> sorted = steps;
  const auto mid = sorted.begin() + static_cast<std::ptrdiff_t>(sorted.size() / 2);
  std::nth_element(sorted.begin(), mid, sorted.end());
  double median = *mid;
  if (sorted.size() % 2 == 0) {
    median = 0.5 * (median + *std::max_element(sorted.begin(), mid));
  }
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (std::abs(steps[i] - median) > kJitterTolerance * median) {
      throw FormatError("non-uniform sampling at row " + std::to_string(i + 3));
    }
  }
  return SampleSeries(std::move(omega), 1.0 / median);
}

SampleSeries load_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  return read_csv(in);
}

void write_csv(std::ostream& out, const SampleSeries& series) {
  out << "t,omega\n";
  char buf[64];
  const auto x = series.values();
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double t = static_cast<double>(i) / series.sample_rate();
    std::snprintf(buf, sizeof(buf), "%.17g,", t);
    out << buf;
    std::snprintf(buf, sizeof(buf), "%.17g\n", x[i]);
    out << buf;
  }
}

void save_csv(const std::filesystem::path& path, const SampleSeries& series) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path.string());
  write_csv(out, series);
}

}  // namespace gyromoe::signal

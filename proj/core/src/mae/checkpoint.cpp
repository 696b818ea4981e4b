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

#include "gyromoe/mae/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "gyromoe/error.hpp"

namespace gyromoe::mae {
namespace {

void check_token(const std::string& s, const char* what) {
  if (s.empty() || s.find_first_of(" \t\r\n") != std::string::npos) {
    throw ContractError(std::string("checkpoint ") + what + " must be a non-empty token without whitespace: '" +
                        s + "'");
  }
}

void put_le(std::ostream& out, double v) {
  auto bits = std::bit_cast<std::uint64_t>(v);
  unsigned char bytes[8];
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<unsigned char>((bits >> (8 * i)) & 0xFF);
  out.write(reinterpret_cast<const char*>(bytes), 8);
}

double get_le(const unsigned char* bytes) {
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
  return std::bit_cast<double>(bits);
}

}  // namespace

void write_checkpoint(std::ostream& out, const ParamStore& params, const std::map<std::string, std::string>& meta) {
  out << kCheckpointTag << '\n';
  for (const auto& [k, v] : meta) {
    check_token(k, "meta key");
    check_token(v, "meta value");
    out << "meta " << k << ' ' << v << '\n';
  }
  std::size_t offset = 0;
  for (std::size_t i = 0; i < params.size(); ++i) {
    const auto& name = params.name(i);
    check_token(name, "tensor name");
    const auto& shape = params[i].value.shape();
    out << "tensor " << name << ' ' << shape.size();
    for (std::size_t d : shape) out << ' ' << d;
    out << ' ' << offset << '\n';
    offset += params[i].value.size() * sizeof(double);
  }
  out << "end\n";
  for (std::size_t i = 0; i < params.size(); ++i)
    for (double v : params[i].value.data()) put_le(out, v);
  if (!out) throw FormatError("failed writing checkpoint");
}

Checkpoint read_checkpoint(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line) || line != kCheckpointTag) {
    throw FormatError(std::string("not a checkpoint: expected version tag ") + kCheckpointTag);
  }
  struct Entry {
    std::string name;
    diff::Shape shape;
    std::size_t offset;
  };
  std::vector<Entry> entries;
  Checkpoint ckpt;
  bool ended = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream row(line);
    std::string kind;
    row >> kind;
    if (kind == "end") {
      ended = true;
      break;
    }
    if (kind == "meta") {
      std::string k, v;
      if (!(row >> k >> v)) throw ParseError(line_no, "malformed meta line");
      ckpt.meta[k] = v;
    } else if (kind == "tensor") {
      Entry e;
      std::size_t rank = 0;
      if (!(row >> e.name >> rank) || rank > 2) throw ParseError(line_no, "malformed tensor line");
      e.shape.resize(rank);
      for (auto& d : e.shape)
        if (!(row >> d)) throw ParseError(line_no, "malformed tensor shape");
      if (!(row >> e.offset)) throw ParseError(line_no, "missing tensor offset");
      entries.push_back(std::move(e));
    } else {
      throw ParseError(line_no, "unexpected manifest entry '" + kind + "'");
    }
  }
  if (!ended) throw FormatError("checkpoint manifest is not terminated by 'end'");

  std::vector<unsigned char> blob((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  for (const auto& e : entries) {
    const std::size_t count = diff::element_count(e.shape);
    if (e.offset + count * sizeof(double) > blob.size()) {
      throw FormatError("tensor '" + e.name + "' extends past the end of the data block");
    }
    std::vector<double> data(count);
    for (std::size_t i = 0; i < count; ++i) data[i] = get_le(blob.data() + e.offset + i * sizeof(double));
    ckpt.params.add(e.name, diff::Tensor(e.shape, std::move(data)));
  }
  return ckpt;
}

void save_checkpoint(const std::filesystem::path& path, const ParamStore& params,
                     const std::map<std::string, std::string>& meta) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path.string());
  write_checkpoint(out, params, meta);
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  return read_checkpoint(in);
}

}  // namespace gyromoe::mae

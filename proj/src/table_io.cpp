// Copyright 2026 The GOPS Solver Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gops/table_io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <vector>

namespace gops {
namespace {

constexpr std::size_t kChunkValues = 1 << 16;

void encode(std::span<const double> values, std::vector<char>& bytes) {
  bytes.resize(values.size() * 8);
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto bits = std::bit_cast<std::uint64_t>(values[i]);
    for (int b = 0; b < 8; ++b) bytes[i * 8 + b] = static_cast<char>(bits >> (8 * b) & 0xff);
  }
}

void decode(std::span<const char> bytes, std::span<double> values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::uint64_t bits = 0;
    for (int b = 0; b < 8; ++b)
      bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes[i * 8 + b])) << (8 * b);
    values[i] = std::bit_cast<double>(bits);
  }
}

}  // namespace

GvtWriter::GvtWriter(const std::filesystem::path& path, int n) : path_(path), n_(n) {
  if (n < 0 || n > kMaxCards)
    throw std::invalid_argument("GVT: n = " + std::to_string(n) + " out of range");
  out_.open(path, std::ios::binary | std::ios::trunc);
  if (!out_) throw GvtError(GvtError::Kind::kIo, "cannot open " + path.string() + " for writing");
  const std::array<char, kGvtHeaderSize> header = {
      kGvtMagic[0], kGvtMagic[1], kGvtMagic[2], kGvtMagic[3],
      static_cast<char>(kGvtVersion), static_cast<char>(n),
      static_cast<char>(Arithmetic::kFloat64), 0};
  out_.write(header.data(), header.size());
}

void GvtWriter::append_layer(int j, std::span<const double> values) {
  if (j != next_layer_)
    throw std::logic_error("GVT: layer " + std::to_string(j) + " written out of order (expected " +
                           std::to_string(next_layer_) + ")");
  if (j > n_) throw std::logic_error("GVT: too many layers");
  if (values.size() != layer_size(n_, j))
    throw std::invalid_argument("GVT: layer " + std::to_string(j) + " has " +
                                std::to_string(values.size()) + " values, expected " +
                                std::to_string(layer_size(n_, j)));
  std::vector<char> bytes;
  for (std::size_t at = 0; at < values.size(); at += kChunkValues) {
    const auto chunk = values.subspan(at, std::min(kChunkValues, values.size() - at));
    encode(chunk, bytes);
    out_.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  }
  if (!out_) throw GvtError(GvtError::Kind::kIo, "write failed on " + path_.string());
  ++next_layer_;
}

void GvtWriter::finish() {
  if (next_layer_ != n_ + 1)
    throw std::logic_error("GVT: only " + std::to_string(next_layer_) + " of " +
                           std::to_string(n_ + 1) + " layers written");
  out_.flush();
  if (!out_) throw GvtError(GvtError::Kind::kIo, "flush failed on " + path_.string());
  out_.close();
}

void save_table(const ValueTable<double>& table, const std::filesystem::path& path) {
  if (!table.complete())
    throw std::invalid_argument("save_table: table is missing layers (solve with keep_all_layers)");
  GvtWriter writer(path, table.n());
  for (int j = 0; j <= table.n(); ++j) writer.append_layer(j, table.layer(j));
  writer.finish();
}

ValueTable<double> load_table(const std::filesystem::path& path, std::optional<int> expected_n) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw GvtError(GvtError::Kind::kIo, "cannot open " + path.string());

  std::array<char, kGvtHeaderSize> header{};
  in.read(header.data(), header.size());
  if (in.gcount() != static_cast<std::streamsize>(header.size()))
    throw GvtError(GvtError::Kind::kTruncated, path.string() + ": truncated header");
  if (!std::equal(std::begin(kGvtMagic), std::end(kGvtMagic), header.begin()))
    throw GvtError(GvtError::Kind::kBadMagic, path.string() + ": not a GVT file (bad magic)");
  if (static_cast<std::uint8_t>(header[4]) != kGvtVersion)
    throw GvtError(GvtError::Kind::kBadVersion,
                   path.string() + ": unsupported GVT version " +
                       std::to_string(static_cast<unsigned char>(header[4])));
  const int n = static_cast<unsigned char>(header[5]);
  if (n > kMaxCards)
    throw GvtError(GvtError::Kind::kBadSize, path.string() + ": n = " + std::to_string(n) +
                                                 " out of range");
  if (header[6] != static_cast<char>(Arithmetic::kFloat64))
    throw GvtError(GvtError::Kind::kBadArithmetic,
                   path.string() + ": only float64 tables are supported");
  if (expected_n && *expected_n != n)
    throw GvtError(GvtError::Kind::kSizeMismatch,
                   path.string() + ": table is for n = " + std::to_string(n) + ", expected " +
                       std::to_string(*expected_n));

  ValueTable<double> table(n);
  std::vector<char> bytes;
  for (int j = 0; j <= n; ++j) {
    std::vector<double> values(layer_size(n, j));
    for (std::size_t at = 0; at < values.size(); at += kChunkValues) {
      const std::size_t count = std::min(kChunkValues, values.size() - at);
      bytes.resize(count * 8);
      in.read(bytes.data(), static_cast<std::streamsize>(bytes.size()));
      if (in.gcount() != static_cast<std::streamsize>(bytes.size()))
        throw GvtError(GvtError::Kind::kTruncated,
                       path.string() + ": truncated in layer " + std::to_string(j));
      decode(bytes, std::span<double>(values).subspan(at, count));
    }
    table.set_layer(j, std::move(values));
  }
  if (in.peek() != std::ifstream::traits_type::eof())
    throw GvtError(GvtError::Kind::kTrailingData, path.string() + ": trailing bytes after layer " +
                                                      std::to_string(n));
  return table;
}

}  // namespace gops

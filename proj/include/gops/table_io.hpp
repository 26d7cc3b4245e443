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

#ifndef GOPS_TABLE_IO_HPP_
#define GOPS_TABLE_IO_HPP_

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>

#include "gops/value_table.hpp"

// GVT files: an 8-byte header
//   "GVT1" | version (1) | n | arithmetic (0 = float64) | reserved (0)
// followed by layers j = 0..n, each C(n, j)^3 little-endian IEEE-754 doubles
// in layer_index order.
namespace gops {

inline constexpr char kGvtMagic[4] = {'G', 'V', 'T', '1'};
inline constexpr std::uint8_t kGvtVersion = 1;
inline constexpr std::size_t kGvtHeaderSize = 8;

class GvtError : public std::runtime_error {
 public:
  enum class Kind { kIo, kBadMagic, kBadVersion, kBadArithmetic, kBadSize, kTruncated, kTrailingData, kSizeMismatch };
  GvtError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// Writes a GVT file layer by layer so a solve can stream its output without
// holding every layer in memory.
class GvtWriter {
 public:
  GvtWriter(const std::filesystem::path& path, int n);
  // Layers must arrive in order 0, 1, ..., n.
  void append_layer(int j, std::span<const double> values);
  // Flushes and checks that every layer was written.
  void finish();

 private:
  std::filesystem::path path_;
  std::ofstream out_;
  int n_;
  int next_layer_ = 0;
};

// Requires a complete table.
void save_table(const ValueTable<double>& table, const std::filesystem::path& path);

// `expected_n`, when given, must match the header.
ValueTable<double> load_table(const std::filesystem::path& path,
                              std::optional<int> expected_n = std::nullopt);

}  // namespace gops

#endif  // GOPS_TABLE_IO_HPP_

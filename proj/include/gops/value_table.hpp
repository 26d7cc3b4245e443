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

#ifndef GOPS_VALUE_TABLE_HPP_
#define GOPS_VALUE_TABLE_HPP_

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "gops/card_set.hpp"
#include "gops/scalar.hpp"

namespace gops {

// Number of subgames with hands and deck of size j drawn from n cards.
inline std::uint64_t layer_size(int n, int j) {
  const std::uint64_t c = binomial(n, j);
  return c * c * c;
}

// Flat position of (V, Y, P) inside its layer.
inline std::uint64_t layer_index(std::uint64_t rank_v, std::uint64_t rank_y,
                                 std::uint64_t rank_p, std::uint64_t subsets) {
  return (rank_v * subsets + rank_y) * subsets + rank_p;
}

// Values f(V, Y, P) of every subgame over cards 1..n, one dense layer per hand
// size j. Because subset ranks do not depend on the deck size, a table for n
// also answers every game played with cards 1..m for m <= n.
template <typename Scalar>
class ValueTable {
 public:
  ValueTable() = default;
  explicit ValueTable(int n) : n_(n), layers_(n + 1) {
    if (n < 0 || n > kMaxCards)
      throw std::invalid_argument("table size " + std::to_string(n) + " outside 0.." +
                                  std::to_string(kMaxCards));
  }

  int n() const { return n_; }
  static constexpr Arithmetic arithmetic() { return ScalarTraits<Scalar>::kArithmetic; }

  bool has_layer(int j) const {
    return j >= 0 && j <= n_ && layers_[j].size() == layer_size(n_, j);
  }
  bool complete() const {
    for (int j = 0; j <= n_; ++j)
      if (!has_layer(j)) return false;
    return true;
  }

  std::span<const Scalar> layer(int j) const {
    require_layer(j);
    return layers_[j];
  }

  void set_layer(int j, std::vector<Scalar> values) {
    if (j < 0 || j > n_) throw std::out_of_range("layer " + std::to_string(j) + " out of range");
    if (values.size() != layer_size(n_, j))
      throw std::invalid_argument("layer " + std::to_string(j) + " needs " +
                                  std::to_string(layer_size(n_, j)) + " values, got " +
                                  std::to_string(values.size()));
    layers_[j] = std::move(values);
  }
  void drop_layer(int j) { std::vector<Scalar>().swap(layers_.at(j)); }

  std::uint64_t index(const GameState& s) const {
    if (s.v().max() > n_ || s.y().max() > n_ || s.p().max() > n_)
      throw std::out_of_range("state uses cards above " + std::to_string(n_) +
                              " (table built for n = " + std::to_string(n_) + ")");
    const int j = s.size();
    return layer_index(rank_subset(s.v(), j), rank_subset(s.y(), j), rank_subset(s.p(), j),
                       binomial(n_, j));
  }

  const Scalar& value(const GameState& s) const {
    const int j = s.size();
    require_layer(j);
    return layers_[j][index(s)];
  }

  // Mutable access for fault injection and loaders.
  Scalar& at(int j, std::uint64_t index) { return layers_.at(j).at(index); }

  // Callable form for payoff_matrix and friends.
  auto lookup() const {
    return [this](const GameState& s) -> const Scalar& { return value(s); };
  }

 private:
  void require_layer(int j) const {
    if (!has_layer(j))
      throw std::out_of_range("table for n = " + std::to_string(n_) + " has no layer " +
                              std::to_string(j));
  }

  int n_ = 0;
  std::vector<std::vector<Scalar>> layers_;
};

}  // namespace gops

#endif  // GOPS_VALUE_TABLE_HPP_

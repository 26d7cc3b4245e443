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

#ifndef GOPS_CARD_SET_HPP_
#define GOPS_CARD_SET_HPP_

#include <array>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace gops {

// Largest deck the indexing scheme supports. Binomials up to C(16, 8)^3 fit
// comfortably in 64 bits.
inline constexpr int kMaxCards = 16;

// Card values run 1..n (ace = 1 ... king = 13 for a full suit).
using Card = int;

inline constexpr int sign(long long x) { return (x > 0) - (x < 0); }

namespace detail {

inline constexpr auto kBinomials = [] {
  std::array<std::array<std::uint64_t, kMaxCards + 1>, kMaxCards + 1> c{};
  for (int n = 0; n <= kMaxCards; ++n) {
    c[n][0] = 1;
    for (int k = 1; k <= n; ++k) c[n][k] = c[n - 1][k - 1] + c[n - 1][k];
  }
  return c;
}();

}  // namespace detail

inline constexpr std::uint64_t binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n) return 0;
  return detail::kBinomials[n][k];
}

// A set of cards as a bitmask: bit (c - 1) is set iff card c is present.
class CardSet {
 public:
  constexpr CardSet() = default;
  constexpr explicit CardSet(std::uint32_t bits) : bits_(bits) {}
  CardSet(std::initializer_list<Card> cards) {
    for (Card c : cards) insert(c);
  }

  // {1, ..., n}
  static constexpr CardSet full(int n) {
    return CardSet(n >= 32 ? ~0u : ((1u << n) - 1u));
  }

  constexpr std::uint32_t bits() const { return bits_; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool contains(Card c) const {
    return c >= 1 && c <= kMaxCards && (bits_ >> (c - 1) & 1u);
  }
  // Highest card value present, 0 for the empty set.
  constexpr Card max() const { return 32 - std::countl_zero(bits_); }
  constexpr Card min() const { return empty() ? 0 : std::countr_zero(bits_) + 1; }
  int sum() const {
    int s = 0;
    for (Card c : cards()) s += c;
    return s;
  }

  void insert(Card c) {
    if (c < 1 || c > kMaxCards)
      throw std::out_of_range("card " + std::to_string(c) + " outside 1.." +
                              std::to_string(kMaxCards));
    bits_ |= 1u << (c - 1);
  }
  constexpr CardSet without(Card c) const {
    return CardSet(bits_ & ~(1u << (c - 1)));
  }
  constexpr CardSet with(Card c) const { return CardSet(bits_ | (1u << (c - 1))); }

  // Ascending card order; this is also the row/column order of payoff matrices.
  std::vector<Card> cards() const {
    std::vector<Card> out;
    out.reserve(size());
    for (std::uint32_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b) + 1);
    return out;
  }

  std::string to_string() const;

  friend constexpr bool operator==(CardSet, CardSet) = default;

 private:
  std::uint32_t bits_ = 0;
};

// Colexicographic rank of a k-subset (combinatorial number system): with
// elements c_1 < ... < c_k the rank is sum_i C(c_i - 1, i). The rank does not
// depend on the deck size, so subsets of {1..n} keep their rank in any larger
// deck.
std::uint64_t rank_subset(CardSet s, int k);
inline std::uint64_t rank_subset(CardSet s) { return rank_subset(s, s.size()); }

// Inverse of rank_subset over k-subsets of {1..n}.
CardSet unrank_subset(std::uint64_t rank, int k, int n);

// Parses "2,4,13" (empty string is the empty set).
CardSet parse_card_list(const std::string& text);

// One subgame: player one's hand, player two's hand and the remaining deck.
class GameState {
 public:
  GameState() = default;
  GameState(CardSet v, CardSet y, CardSet p) : v_(v), y_(y), p_(p) {
    if (v.size() != y.size() || v.size() != p.size())
      throw std::invalid_argument(
          "hands and deck must have equal cardinality (|v| = |y| = |p|), got " +
          std::to_string(v.size()) + ", " + std::to_string(y.size()) + ", " +
          std::to_string(p.size()));
  }
  static GameState start(int n) {
    return {CardSet::full(n), CardSet::full(n), CardSet::full(n)};
  }

  CardSet v() const { return v_; }
  CardSet y() const { return y_; }
  CardSet p() const { return p_; }
  int size() const { return v_.size(); }
  GameState swapped() const { return {y_, v_, p_}; }

  friend bool operator==(const GameState&, const GameState&) = default;

 private:
  CardSet v_, y_, p_;
};

}  // namespace gops

#endif  // GOPS_CARD_SET_HPP_

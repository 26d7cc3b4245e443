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

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

#include "doctest.h"
#include "gops/card_set.hpp"
#include "gops/payoff.hpp"
#include "gops/rng.hpp"

namespace gops {
namespace {

// All k-subsets of 1..n, sorted colexicographically (compare largest
// elements first). Independent of the binomial-sum ranking.
std::vector<std::vector<int>> colex_subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
    if (std::popcount(bits) != k) continue;
    std::vector<int> s;
    for (int c = 1; c <= n; ++c)
      if (bits >> (c - 1) & 1u) s.push_back(c);
    out.push_back(s);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
  });
  return out;
}

CardSet from(const std::vector<int>& cards) {
  CardSet s;
  for (int c : cards) s.insert(c);
  return s;
}

TEST_CASE("sign") {
  CHECK(sign(3) == 1);
  CHECK(sign(0) == 0);
  CHECK(sign(-7) == -1);
}

TEST_CASE("card set basics") {
  const CardSet s{2, 4, 13};
  CHECK(s.size() == 3);
  CHECK(s.contains(4));
  CHECK_FALSE(s.contains(3));
  CHECK(s.max() == 13);
  CHECK(s.min() == 2);
  CHECK(s.sum() == 19);
  CHECK(s.cards() == std::vector<Card>{2, 4, 13});
  CHECK(s.without(4) == CardSet{2, 13});
  CHECK(CardSet::full(5) == CardSet{1, 2, 3, 4, 5});
  CHECK(s.to_string() == "{2,4,13}");
  CHECK_THROWS_AS(CardSet{0}, std::out_of_range);
  CHECK_THROWS_AS(CardSet{17}, std::out_of_range);
}

TEST_CASE("parse card lists") {
  CHECK(parse_card_list("2,4") == CardSet{2, 4});
  CHECK(parse_card_list(" 12, 13 ") == CardSet{12, 13});
  CHECK(parse_card_list("").empty());
  CHECK_THROWS_AS(parse_card_list("2,x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_card_list("2,2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_card_list("0"), std::out_of_range);
}

TEST_CASE("game state requires equal cardinalities") {
  CHECK_NOTHROW(GameState({2, 4}, {1, 3}, {12, 13}));
  CHECK_THROWS_AS(GameState({2, 4}, {1}, {12, 13}), std::invalid_argument);
  CHECK(GameState::start(3).p() == CardSet{1, 2, 3});
}

TEST_CASE("rank_subset examples") {
  CHECK(rank_subset(CardSet{1, 2, 3}, 3) == 0);
  CHECK(rank_subset(CardSet{1, 2, 4}, 3) == 1);
  CHECK(rank_subset(CardSet{11, 12, 13}, 3) == 285);
  CHECK(rank_subset(CardSet{}, 0) == 0);
  CHECK_THROWS_AS(rank_subset(CardSet{1, 2}, 3), std::invalid_argument);
}

TEST_CASE("unrank_subset examples") {
  CHECK(unrank_subset(0, 3, 13) == CardSet{1, 2, 3});
  CHECK(unrank_subset(1, 3, 13) == CardSet{1, 2, 4});
  CHECK(unrank_subset(285, 3, 13) == CardSet{11, 12, 13});
  CHECK_THROWS_AS(unrank_subset(286, 3, 13), std::out_of_range);
  CHECK_THROWS_AS(unrank_subset(0, 4, 3), std::out_of_range);
}

TEST_CASE("rank order is colexicographic, exhaustive for n <= 10") {
  for (int n = 0; n <= 10; ++n) {
    for (int k = 0; k <= n; ++k) {
      const auto expected = colex_subsets(n, k);
      REQUIRE(expected.size() == binomial(n, k));
      for (std::size_t r = 0; r < expected.size(); ++r) {
        const CardSet s = from(expected[r]);
        CHECK(rank_subset(s, k) == r);
        CHECK(unrank_subset(r, k, n) == s);
      }
    }
  }
}

TEST_CASE("rank/unrank are inverse up to n = 13") {
  for (int n = 11; n <= 13; ++n)
    for (int k = 0; k <= n; ++k)
      for (std::uint64_t r = 0; r < binomial(n, k); ++r)
        REQUIRE(rank_subset(unrank_subset(r, k, n), k) == r);
}

TEST_CASE("binomials fit 64 bits at the largest supported deck") {
  CHECK(binomial(16, 8) == 12870);
  CHECK(binomial(13, 6) == 1716);
  CHECK(binomial(5, 6) == 0);
}

// f(V,Y,P) values for the endgame in which player one holds {2,4} against
// {1,3} with queen and king left: every 1x1 subgame is worth +-12.
double endgame_lookup(const GameState& s) {
  REQUIRE(s.size() == 1);
  return s.p().cards()[0] * sign(s.v().cards()[0] - s.y().cards()[0]);
}

TEST_CASE("payoff_matrix examples") {
  const auto x = payoff_matrix<double>(GameState({2, 4}, {1, 3}, {12, 13}), 13, endgame_lookup);
  REQUIRE(x.rows() == 2);
  CHECK(x(0, 0) == 25);
  CHECK(x(0, 1) == -1);
  CHECK(x(1, 0) == 1);
  CHECK(x(1, 1) == 25);

  auto empty = [](const GameState& s) {
    REQUIRE(s.size() == 0);
    return 0.0;
  };
  const auto one = payoff_matrix<double>(GameState({2}, {1}, {5}), 5, empty);
  CHECK(one.size() == 1);
  CHECK(one(0, 0) == 5);
  for (int a = 1; a <= 6; ++a)
    CHECK(payoff_matrix<double>(GameState({a}, {a}, {4}), 4, empty)(0, 0) == 0);
}

TEST_CASE("payoff_matrix errors") {
  CHECK_THROWS_AS(payoff_matrix<double>(GameState({2}, {1}, {5}), 4,
                                        [](const GameState&) { return 0.0; }),
                  std::invalid_argument);
  auto missing = [](const GameState&) -> double { throw std::out_of_range("miss"); };
  CHECK_THROWS_AS(payoff_matrix<double>(GameState({2}, {1}, {5}), 5, missing), std::out_of_range);
}

// Antisymmetric pseudo-random lookup bounded by the deck sum.
double hashed_lookup(const GameState& s) {
  auto g = [](CardSet a, CardSet b, CardSet p) {
    Rng rng((std::uint64_t{a.bits()} << 40) ^ (std::uint64_t{b.bits()} << 20) ^ p.bits());
    return (rng.next_unit() - 0.5) * p.sum();
  };
  return g(s.v(), s.y(), s.p()) - g(s.y(), s.v(), s.p());
}

TEST_CASE("payoff matrix symmetries (random states)") {
  Rng rng(42);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(8));
    const int j = 1 + static_cast<int>(rng.below(n));
    const CardSet v = unrank_subset(rng.below(binomial(n, j)), j, n);
    const CardSet y = unrank_subset(rng.below(binomial(n, j)), j, n);
    const CardSet p = unrank_subset(rng.below(binomial(n, j)), j, n);
    const Card upcard = p.cards()[rng.below(j)];

    const auto x = payoff_matrix<double>(GameState(v, y, p), upcard, hashed_lookup);
    const auto swapped = payoff_matrix<double>(GameState(y, v, p), upcard, hashed_lookup);
    CHECK(swapped.isApprox(-x.transpose()));

    const auto self = payoff_matrix<double>(GameState(v, v, p), upcard, hashed_lookup);
    CHECK((self + self.transpose()).cwiseAbs().maxCoeff() < 1e-12);

    CHECK(x.cwiseAbs().maxCoeff() <= p.sum() + 1e-12);
  }
}

}  // namespace
}  // namespace gops

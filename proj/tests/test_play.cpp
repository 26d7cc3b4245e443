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
#include <map>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "gops/play.hpp"
#include "gops/solver.hpp"
#include "opponents.hpp"

namespace gops {
namespace {

MixedStrategy<double> mix(std::initializer_list<double> p) {
  MixedStrategy<double> s(p.size());
  Eigen::Index i = 0;
  for (double v : p) s(i++) = v;
  return s;
}

SharedTable table_for(int n) {
  SolveConfig c;
  c.n = n;
  c.keep_all_layers = true;
  return std::make_shared<const ValueTable<double>>(solve_all<double>(c));
}

std::vector<std::vector<Card>> all_orders(int n) {
  std::vector<Card> d(n);
  std::iota(d.begin(), d.end(), 1);
  std::vector<std::vector<Card>> out;
  do out.push_back(d);
  while (std::next_permutation(d.begin(), d.end()));
  return out;
}

TEST_CASE("splitmix64 reference outputs") {
  Rng a(1234567);
  CHECK(a.next_u64() == 6457827717110365317ull);
  CHECK(a.next_u64() == 3203168211198807973ull);
  CHECK(a.next_u64() == 9817491932198370423ull);
  CHECK(Rng(0).next_u64() == 0xE220A8397B1DCDAFull);
}

TEST_CASE("seeded shuffles") {
  Rng a(1);
  CHECK(shuffled_deck(5, a) == std::vector<Card>{3, 2, 5, 4, 1});
  Rng b(42);
  CHECK(shuffled_deck(13, b) == std::vector<Card>{2, 13, 4, 6, 1, 9, 11, 7, 12, 5, 3, 8, 10});
  Rng c(7);
  CHECK(shuffled_deck(9, c) == std::vector<Card>{3, 7, 6, 2, 8, 9, 1, 5, 4});
  CHECK(c.next_unit() == doctest::Approx(0.13425829880844864).epsilon(1e-16));
}

TEST_CASE("sample_bid and inverse CDF") {
  Rng rng(3);
  CHECK(sample_bid(mix({1.0}), CardSet{7}, rng) == 7);
  CHECK(pick_by_cdf(mix({0.5, 0.5}), CardSet{2, 9}, 0.25) == 2);
  CHECK(pick_by_cdf(mix({0.48, 0.52}), CardSet{2, 4}, 0.50) == 4);
  CHECK(pick_by_cdf(mix({0.48, 0.52}), CardSet{2, 4}, 0.47) == 2);
  CHECK(pick_by_cdf(mix({0, 1, 0}), CardSet{1, 2, 3}, 0.999999) == 2);
  CHECK_THROWS_AS(sample_bid(mix({0.5, 0.5}), CardSet{1, 2, 3}, rng), std::invalid_argument);

  Rng x(11), y(11);
  const auto s = mix({0.2, 0.3, 0.5});
  for (int i = 0; i < 100; ++i) CHECK(sample_bid(s, CardSet{1, 5, 9}, x) == pick_by_cdf(s, CardSet{1, 5, 9}, y.next_unit()));
}

TEST_CASE("new session") {
  const auto s = Session::create(5, 1, BotPolicy::scripted({1, 2, 3, 4, 5}));
  CHECK(s.human_hand() == CardSet::full(5));
  CHECK(s.bot_hand() == CardSet::full(5));
  CHECK(s.human_half_points() == 0);
  CHECK(s.bot_half_points() == 0);
  CHECK(s.round() == 1);
  CHECK(s.upcard() == 3);
  CHECK(s.pending_bot_bid() == 1);
  CHECK(s.deck_order() ==
        Session::create(5, 1, BotPolicy::scripted({1, 2, 3, 4, 5})).deck_order());
  CHECK(winning_score(13) == 46);
  CHECK(winning_score(5) == 8);

  CHECK_THROWS_AS(Session::create(0, 1, BotPolicy::scripted({})), PlayError);
  CHECK_THROWS_AS(Session::create(14, 1, BotPolicy::scripted({})), PlayError);
  CHECK_THROWS_AS(Session::create(5, 1, BotPolicy::equilibrium(nullptr)), PlayError);
  CHECK_THROWS_AS(Session::create(6, 1, BotPolicy::equilibrium(table_for(5))), PlayError);
}

TEST_CASE("scoring: win, tie and conservation over a full 13-card game") {
  // seed 42 deals 2, 13, 4, 6, 1, 9, 11, 7, 12, 5, 3, 8, 10
  std::vector<Card> bot = {2, 1, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13};
  std::vector<Card> human = {2, 4, 1, 3, 5, 6, 7, 8, 9, 10, 11, 12, 13};
  auto s = Session::create(13, 42, BotPolicy::scripted(bot));
  const auto first = s.submit_bid(human[0]);
  CHECK(first.points_to == PointsTo::kSplit);
  CHECK(s.human_half_points() == 2);
  CHECK(s.bot_half_points() == 2);

  const auto second = s.submit_bid(human[1]);
  CHECK(second.upcard == 13);
  CHECK(second.human_bid == 4);
  CHECK(second.bot_bid == 1);
  CHECK(second.points_to == PointsTo::kHuman);
  CHECK(s.human_half_points() == 2 + 26);

  int resolved = 2 + 13;
  for (int r = 2; r < 13; ++r) {
    const auto rec = s.submit_bid(human[r]);
    resolved += rec.upcard;
    CHECK(s.human_half_points() + s.bot_half_points() == 2 * resolved);
  }
  CHECK(s.finished());
  CHECK(s.human_half_points() + s.bot_half_points() == 2 * 91);
  CHECK_THROWS_AS(s.submit_bid(1), PlayError);
  CHECK_THROWS_AS(s.upcard(), PlayError);
}

TEST_CASE("tie on upcard 5 splits 2.5 each") {
  // seed 1 deals 3, 2, 5, 4, 1
  auto s = Session::create(5, 1, BotPolicy::scripted({1, 2, 3, 4, 5}));
  s.submit_bid(1);
  s.submit_bid(2);
  const auto rec = s.submit_bid(3);
  CHECK(rec.upcard == 5);
  CHECK(rec.points_to == PointsTo::kSplit);
  CHECK(s.human_half_points() == 3 + 2 + 5);
  CHECK(s.bot_half_points() == 3 + 2 + 5);
}

TEST_CASE("bid errors") {
  auto s = Session::create(3, 9, BotPolicy::scripted({1, 2, 3}));
  CHECK_THROWS_AS(s.submit_bid(4), PlayError);
  s.submit_bid(2);
  try {
    s.submit_bid(2);
    FAIL("expected PlayError");
  } catch (const PlayError& e) {
    CHECK(e.kind() == PlayError::Kind::kNotInHand);
  }
  CHECK_THROWS_AS(s.final_result(), PlayError);
  CHECK_THROWS_AS(Session::create(3, 9, BotPolicy::scripted({1, 1, 1})).submit_bid(1), PlayError);
}

TEST_CASE("final results") {
  // 13-card game: human wins 10..13 (46 points), loses 1..9 (45 points).
  Rng preview(5);
  const auto order = shuffled_deck(13, preview);
  std::vector<Card> bot, human;
  int low = 1;
  for (Card up : order) {
    if (up >= 10) {
      human.push_back(up);
      bot.push_back(14 - up);  // 13 -> 1, 12 -> 2, ...
    } else {
      human.push_back(low);
      bot.push_back(low + 4);
      ++low;
    }
  }
  auto s = Session::create(13, 5, BotPolicy::scripted(bot));
  for (Card c : human) s.submit_bid(c);
  const auto r = s.final_result();
  CHECK(r.human_score() == 46);
  CHECK(r.bot_score() == 45);
  CHECK(r.winner == Winner::kHuman);
  CHECK(r.zero_sum_margin() == 1);

  // all ties: 45.5 each
  auto t = Session::create(13, 5, BotPolicy::scripted(human));
  for (Card c : human) t.submit_bid(c);
  CHECK(t.final_result().winner == Winner::kDraw);
  CHECK(t.final_result().human_score() == 45.5);
  CHECK(t.final_result().zero_sum_margin() == 0);
}

TEST_CASE("split-score difference equals the zero-sum margin") {
  Rng rng(77);
  for (int game = 0; game < 200; ++game) {
    const int n = 1 + static_cast<int>(rng.below(13));
    auto s = Session::create(n, rng.next_u64(), BotPolicy::deterministic(opponents::hashed(game)));
    int margin = 0;
    while (!s.finished()) {
      const auto cards = s.human_hand().cards();
      const auto rec = s.submit_bid(cards[rng.below(cards.size())]);
      margin += rec.upcard * sign(rec.human_bid - rec.bot_bid);
    }
    CHECK(s.final_result().zero_sum_margin() == margin);
  }
}

TEST_CASE("equilibrium bot: commitment, replay and advice") {
  const auto table = table_for(6);
  auto run = [&](bool ask_advice) {
    auto s = Session::create(6, 2024, BotPolicy::equilibrium(table));
    std::vector<std::pair<Card, Card>> transcript;
    Rng human(8);
    while (!s.finished()) {
      const Card committed = *s.pending_bot_bid();
      if (ask_advice) {
        const auto a = s.advice(*table);
        CHECK(std::abs(a.row.sum() - 1) < 1e-9);
        CHECK(*s.pending_bot_bid() == committed);
      }
      const auto cards = s.human_hand().cards();
      const auto rec = s.submit_bid(cards[human.below(cards.size())]);
      CHECK(rec.bot_bid == committed);
      transcript.emplace_back(rec.human_bid, rec.bot_bid);
    }
    return transcript;
  };
  CHECK(run(false) == run(true));
}

TEST_CASE("advice at the queen/king endgame") {
  SolveConfig c;
  c.n = 13;
  c.max_layer = 2;
  const auto t = solve_all<double>(c);
  const auto sol = strategy_for(t, GameState({2, 4}, {1, 3}, {12, 13}), 13);
  CHECK(sol.value == doctest::Approx(12.52));
  CHECK(pick_by_cdf(sol.row, CardSet{2, 4}, 0.50) == 4);
}

TEST_CASE("counter strategy examples") {
  const auto counter = counter_deterministic(opponents::always_match, 3);
  const auto r = duel(3, {3, 1, 2}, counter, opponents::always_match);
  REQUIRE(r.rounds.size() == 3);
  CHECK(r.rounds[0].own < r.rounds[0].opponent);
  CHECK(r.rounds[1].own > r.rounds[1].opponent);
  CHECK(r.rounds[2].own > r.rounds[2].opponent);
  CHECK(r.first_margin == 0);

  std::vector<Card> ordered(13);
  std::iota(ordered.begin(), ordered.end(), 1);
  const auto full = duel(13, ordered, counter_deterministic(opponents::always_match, 13),
                         opponents::always_match);
  CHECK(full.first_rounds_won == 12);
  CHECK(full.first_margin == 65);
  CHECK(full.rounds.back().own == 1);

  for (int n = 2; n <= 13; ++n) {
    std::vector<Card> order(n);
    std::iota(order.begin(), order.end(), 1);
    std::reverse(order.begin(), order.end());
    const auto d = duel(n, order, counter_deterministic(opponents::always_max, n),
                        opponents::always_max);
    CHECK(d.rounds[0].opponent == n);
    CHECK(d.rounds[0].own == 1);
    CHECK(d.second_rounds_won == 1);
  }
}

TEST_CASE("counter wins exactly n - 1 rounds: exhaustive orders for n <= 4, sampled to 6") {
  const auto family = opponents::family();
  for (int n = 1; n <= 6; ++n) {
    std::vector<std::vector<Card>> orders;
    if (n <= 4) {
      orders = all_orders(n);
    } else {
      Rng rng(n);
      for (int i = 0; i < 60; ++i) orders.push_back(shuffled_deck(n, rng));
    }
    for (const auto& [name, opponent] : family) {
      const auto counter = counter_deterministic(opponent, n);
      for (const auto& order : orders) {
        const auto d = duel(n, order, counter, opponent);
        INFO(name, " n=", n);
        REQUIRE(d.first_rounds_won == n - 1);
        if (n == 1) continue;  // the lone round is a forced tie
        REQUIRE(d.ties == 0);
        int lost_upcard = 0;
        for (const auto& rd : d.rounds)
          if (rd.opponent == n) lost_upcard = rd.upcard;
        CHECK(d.first_margin == n * (n + 1) / 2 - 2 * lost_upcard);
      }
    }
  }
}

TEST_CASE("equilibrium bot beats a uniform random bidder at n = 5") {
  const auto table = table_for(5);
  int bot_wins = 0;
  const int matches = 2000;
  Rng human(31337);
  for (int m = 0; m < matches; ++m) {
    auto s = Session::create(5, 1000 + m, BotPolicy::equilibrium(table));
    while (!s.finished()) {
      const auto cards = s.human_hand().cards();
      s.submit_bid(cards[human.below(cards.size())]);
    }
    bot_wins += s.final_result().winner == Winner::kBot;
  }
  CHECK(bot_wins > matches / 2);
}

}  // namespace
}  // namespace gops

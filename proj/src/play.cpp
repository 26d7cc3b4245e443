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

#include "gops/play.hpp"

#include <numeric>
#include <utility>

#include "gops/solver.hpp"

namespace gops {

const char* points_to_name(PointsTo p) {
  switch (p) {
    case PointsTo::kHuman: return "human";
    case PointsTo::kBot: return "bot";
    case PointsTo::kSplit: return "split";
  }
  return "?";
}

const char* winner_name(Winner w) {
  switch (w) {
    case Winner::kHuman: return "human";
    case Winner::kBot: return "bot";
    case Winner::kDraw: return "draw";
  }
  return "?";
}

Card sample_bid(const MixedStrategy<double>& strategy, CardSet hand, Rng& rng) {
  if (static_cast<int>(strategy.size()) != hand.size() || hand.empty())
    throw std::invalid_argument("sample_bid: strategy has " + std::to_string(strategy.size()) +
                                " entries for a hand of " + std::to_string(hand.size()));
  return pick_by_cdf(strategy, hand, rng.next_unit());
}

Card pick_by_cdf(const MixedStrategy<double>& strategy, CardSet hand, double u) {
  const auto cards = hand.cards();
  if (static_cast<std::size_t>(strategy.size()) != cards.size() || cards.empty())
    throw std::invalid_argument("pick_by_cdf: strategy has " + std::to_string(strategy.size()) +
                                " entries for a hand of " + std::to_string(cards.size()));
  double cumulative = 0;
  Eigen::Index last_positive = 0;
  for (Eigen::Index i = 0; i < strategy.size(); ++i) {
    if (strategy(i) > 0) last_positive = i;
    cumulative += strategy(i);
    if (cumulative > u) return cards[i];
  }
  // Rounding left the total a hair under u.
  return cards[last_positive];
}

bool table_covers(const ValueTable<double>& table, int n) {
  if (table.n() < n) return false;
  for (int j = 0; j < n; ++j)
    if (!table.has_layer(j)) return false;
  return true;
}

BotPolicy BotPolicy::equilibrium(SharedTable table) { return BotPolicy(Variant(std::move(table))); }
BotPolicy BotPolicy::scripted(std::vector<Card> bids) { return BotPolicy(Variant(std::move(bids))); }
BotPolicy BotPolicy::deterministic(DeterministicPolicy policy) {
  return BotPolicy(Variant(std::move(policy)));
}

double winning_score(int n) {
  const int total = n * (n + 1) / 2;
  return (total + 1) / 2.0;
}

std::vector<Card> shuffled_deck(int n, Rng& rng) {
  std::vector<Card> deck(n);
  std::iota(deck.begin(), deck.end(), 1);
  for (int i = n - 1; i >= 1; --i) {
    const auto j = static_cast<int>(rng.below(static_cast<std::uint64_t>(i) + 1));
    std::swap(deck[i], deck[j]);
  }
  return deck;
}

Session Session::create(int n, std::uint64_t seed, BotPolicy policy, std::string id) {
  if (n < 1 || n > 13)
    throw PlayError(PlayError::Kind::kBadConfig, "n must be in 1..13, got " + std::to_string(n));
  if (const SharedTable* table = policy.table()) {
    if (!*table || !table_covers(**table, n))
      throw PlayError(PlayError::Kind::kMissingTable,
                      "no value table covering n = " + std::to_string(n));
  }
  Session s;
  s.id_ = std::move(id);
  s.n_ = n;
  s.rng_ = Rng(seed);
  s.deck_order_ = shuffled_deck(n, s.rng_);
  s.human_hand_ = s.bot_hand_ = s.deck_ = CardSet::full(n);
  s.policy_ = std::move(policy);
  s.reveal();
  return s;
}

Card Session::upcard() const {
  if (finished()) throw PlayError(PlayError::Kind::kFinished, "session finished");
  return deck_order_[round_ - 1];
}

Observation Session::observe_as_bot() const {
  Observation o;
  o.n = n_;
  o.round = round_;
  o.upcard = upcard();
  o.own_hand = bot_hand_;
  o.opponent_hand = human_hand_;
  o.deck = deck_;
  for (const auto& r : history_) o.history.push_back({r.upcard, r.bot_bid, r.human_bid});
  return o;
}

void Session::reveal() {
  pending_bot_bid_.reset();
  if (finished()) return;
  Card bid = 0;
  if (const auto* table = std::get_if<SharedTable>(&policy_.policy_)) {
    const GameState state(bot_hand_, human_hand_, deck_);
    const auto sol = strategy_for(**table, state, upcard());
    bid = sample_bid(sol.row, bot_hand_, rng_);
  } else if (const auto* script = std::get_if<std::vector<Card>>(&policy_.policy_)) {
    if (static_cast<std::size_t>(round_) > script->size())
      throw PlayError(PlayError::Kind::kBadPolicy, "scripted bot ran out of bids");
    bid = (*script)[round_ - 1];
  } else {
    bid = std::get<DeterministicPolicy>(policy_.policy_)(observe_as_bot());
  }
  if (!bot_hand_.contains(bid))
    throw PlayError(PlayError::Kind::kBadPolicy,
                    "bot policy chose card " + std::to_string(bid) + " not in its hand");
  pending_bot_bid_ = bid;
}

RoundRecord Session::submit_bid(Card human_card) {
  if (finished()) throw PlayError(PlayError::Kind::kFinished, "session finished");
  if (!human_hand_.contains(human_card))
    throw PlayError(PlayError::Kind::kNotInHand,
                    "card " + std::to_string(human_card) + " not in hand " + human_hand_.to_string());
  const Card prize = upcard();
  const Card bot_card = *pending_bot_bid_;

  RoundRecord record{prize, human_card, bot_card, PointsTo::kSplit};
  if (human_card > bot_card) {
    record.points_to = PointsTo::kHuman;
    human_half_points_ += 2 * prize;
  } else if (human_card < bot_card) {
    record.points_to = PointsTo::kBot;
    bot_half_points_ += 2 * prize;
  } else {
    human_half_points_ += prize;
    bot_half_points_ += prize;
  }
  human_hand_ = human_hand_.without(human_card);
  bot_hand_ = bot_hand_.without(bot_card);
  deck_ = deck_.without(prize);
  history_.push_back(record);
  ++round_;
  reveal();
  return record;
}

GameSolution<double> Session::advice(const ValueTable<double>& table) const {
  if (finished()) throw PlayError(PlayError::Kind::kFinished, "session finished");
  if (!table_covers(table, n_))
    throw PlayError(PlayError::Kind::kMissingTable,
                    "no value table covering n = " + std::to_string(n_));
  return strategy_for(table, GameState(human_hand_, bot_hand_, deck_), upcard());
}

FinalResult Session::final_result() const {
  if (!finished()) throw PlayError(PlayError::Kind::kNotFinished, "session still in progress");
  FinalResult r{Winner::kDraw, human_half_points_, bot_half_points_};
  if (human_half_points_ > bot_half_points_) r.winner = Winner::kHuman;
  if (human_half_points_ < bot_half_points_) r.winner = Winner::kBot;
  return r;
}

DeterministicPolicy counter_deterministic(DeterministicPolicy opponent, int n) {
  return [opponent = std::move(opponent), n](const Observation& mine) {
    Observation theirs = mine;
    std::swap(theirs.own_hand, theirs.opponent_hand);
    for (auto& h : theirs.history) std::swap(h.own, h.opponent);
    const Card predicted = opponent(theirs);
    Card reply = predicted == n ? 1 : predicted + 1;
    if (!mine.own_hand.contains(reply)) {
      // Only reachable when the game did not start from matching full hands.
      reply = 0;
      for (Card c : mine.own_hand.cards())
        if (c > predicted) {
          reply = c;
          break;
        }
      if (reply == 0) reply = mine.own_hand.min();
    }
    return reply;
  };
}

DuelResult duel(int n, const std::vector<Card>& deck_order, const DeterministicPolicy& first,
                const DeterministicPolicy& second) {
  if (static_cast<int>(deck_order.size()) != n)
    throw std::invalid_argument("duel: deck order must list n cards");
  DuelResult result;
  CardSet first_hand = CardSet::full(n), second_hand = CardSet::full(n), deck = CardSet::full(n);
  std::vector<BidRecord> first_view, second_view;
  for (int round = 1; round <= n; ++round) {
    const Card prize = deck_order[round - 1];
    const Observation a{n, round, prize, first_hand, second_hand, deck, first_view};
    const Observation b{n, round, prize, second_hand, first_hand, deck, second_view};
    const Card x = first(a);
    const Card y = second(b);
    if (!first_hand.contains(x) || !second_hand.contains(y))
      throw PlayError(PlayError::Kind::kBadPolicy, "duel: policy bid a card it does not hold");
    if (x > y) {
      ++result.first_rounds_won;
      result.first_margin += prize;
    } else if (x < y) {
      ++result.second_rounds_won;
      result.first_margin -= prize;
    } else {
      ++result.ties;
    }
    first_view.push_back({prize, x, y});
    second_view.push_back({prize, y, x});
    first_hand = first_hand.without(x);
    second_hand = second_hand.without(y);
    deck = deck.without(prize);
  }
  result.rounds = std::move(first_view);
  return result;
}

}  // namespace gops

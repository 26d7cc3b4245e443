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

#ifndef GOPS_PLAY_HPP_
#define GOPS_PLAY_HPP_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "gops/card_set.hpp"
#include "gops/matrix_game.hpp"
#include "gops/rng.hpp"
#include "gops/value_table.hpp"

namespace gops {

class PlayError : public std::runtime_error {
 public:
  enum class Kind { kBadConfig, kMissingTable, kNotInHand, kFinished, kNotFinished, kBadPolicy };
  PlayError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

enum class PointsTo { kHuman, kBot, kSplit };
enum class Winner { kHuman, kBot, kDraw };

const char* points_to_name(PointsTo p);
const char* winner_name(Winner w);

struct RoundRecord {
  Card upcard;
  Card human_bid;
  Card bot_bid;
  PointsTo points_to;
};

// One bid as seen by a player.
struct BidRecord {
  Card upcard;
  Card own;
  Card opponent;
};

// Everything a player may condition on when bidding.
struct Observation {
  int n = 0;
  int round = 0;  // 1-based
  Card upcard = 0;
  CardSet own_hand;
  CardSet opponent_hand;
  CardSet deck;  // unresolved prize cards, current upcard included
  std::vector<BidRecord> history;
};

using DeterministicPolicy = std::function<Card(const Observation&)>;

// Draws a card by inverse CDF: u = (next_u64() >> 11) * 2^-53, then the first
// card (ascending) whose cumulative probability exceeds u.
Card sample_bid(const MixedStrategy<double>& strategy, CardSet hand, Rng& rng);

// The inverse-CDF step of sample_bid for a given u in [0, 1).
Card pick_by_cdf(const MixedStrategy<double>& strategy, CardSet hand, double u);

using SharedTable = std::shared_ptr<const ValueTable<double>>;

// True when `table` holds every layer an n-card game can query.
bool table_covers(const ValueTable<double>& table, int n);

class BotPolicy {
 public:
  // Samples the equilibrium mixture of each stage game.
  static BotPolicy equilibrium(SharedTable table);
  // Plays the listed cards in order, one per round.
  static BotPolicy scripted(std::vector<Card> bids);
  static BotPolicy deterministic(DeterministicPolicy policy);

  const SharedTable* table() const { return std::get_if<SharedTable>(&policy_); }

 private:
  friend class Session;
  using Variant = std::variant<SharedTable, std::vector<Card>, DeterministicPolicy>;
  explicit BotPolicy(Variant p) : policy_(std::move(p)) {}
  Variant policy_;
};

struct FinalResult {
  Winner winner;
  int human_half_points;
  int bot_half_points;
  double human_score() const { return human_half_points / 2.0; }
  double bot_score() const { return bot_half_points / 2.0; }
  // Zero-sum margin to the human (points won from the bot, ties worth nothing).
  double zero_sum_margin() const { return (human_half_points - bot_half_points) / 2.0; }
};

// Smallest score that wins an n-card game outright (46 when n = 13).
double winning_score(int n);

// A live match between a human (player one) and the bot. The deck is shuffled
// from the seed; the bot's bid for each upcard is drawn and committed as the
// upcard is revealed, before the human bids.
class Session {
 public:
  static Session create(int n, std::uint64_t seed, BotPolicy policy, std::string id = {});

  const std::string& id() const { return id_; }
  int n() const { return n_; }
  int round() const { return round_; }
  bool finished() const { return round_ > n_; }
  Card upcard() const;
  CardSet human_hand() const { return human_hand_; }
  CardSet bot_hand() const { return bot_hand_; }
  // Prize cards not yet resolved, current upcard included.
  CardSet deck() const { return deck_; }
  int human_half_points() const { return human_half_points_; }
  int bot_half_points() const { return bot_half_points_; }
  const std::vector<RoundRecord>& history() const { return history_; }
  const BotPolicy& policy() const { return policy_; }

  // Hidden state; never shown to the human.
  const std::vector<Card>& deck_order() const { return deck_order_; }
  std::optional<Card> pending_bot_bid() const { return pending_bot_bid_; }

  RoundRecord submit_bid(Card human_card);

  // Equilibrium stage game for the human's current decision. Does not touch
  // the bot's committed bid or the RNG.
  GameSolution<double> advice(const ValueTable<double>& table) const;

  FinalResult final_result() const;

 private:
  Session() = default;
  Observation observe_as_bot() const;
  void reveal();

  std::string id_;
  int n_ = 0;
  int round_ = 1;
  std::vector<Card> deck_order_;
  CardSet human_hand_, bot_hand_, deck_;
  int human_half_points_ = 0;
  int bot_half_points_ = 0;
  std::vector<RoundRecord> history_;
  BotPolicy policy_ = BotPolicy::scripted({});
  Rng rng_;
  std::optional<Card> pending_bot_bid_;
};

// Fisher-Yates over 1..n driven by splitmix64(seed).
std::vector<Card> shuffled_deck(int n, Rng& rng);

// The exploit of a known deterministic opponent: bid one more than the
// opponent will, or the lowest card when the opponent bids its highest. It
// loses only the round in which the opponent plays n.
DeterministicPolicy counter_deterministic(DeterministicPolicy opponent, int n);

struct DuelResult {
  int first_rounds_won = 0;
  int second_rounds_won = 0;
  int ties = 0;
  int first_margin = 0;  // zero-sum points to the first policy
  std::vector<BidRecord> rounds;  // first policy's perspective
};

// Plays two deterministic policies against each other over a fixed prize order.
DuelResult duel(int n, const std::vector<Card>& deck_order, const DeterministicPolicy& first,
                const DeterministicPolicy& second);

}  // namespace gops

#endif  // GOPS_PLAY_HPP_

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

#ifndef GOPS_TESTS_OPPONENTS_HPP_
#define GOPS_TESTS_OPPONENTS_HPP_

#include <string>
#include <utility>
#include <vector>

#include "gops/play.hpp"
#include "gops/rng.hpp"

// A family of deterministic bidding policies used as opponents in tests.
namespace gops::opponents {

// Bid the upcard when held, else the smallest card above it, else the highest.
inline Card always_match(const Observation& o) {
  if (o.own_hand.contains(o.upcard)) return o.upcard;
  for (Card c : o.own_hand.cards())
    if (c > o.upcard) return c;
  return o.own_hand.max();
}

inline Card always_max(const Observation& o) { return o.own_hand.max(); }
inline Card always_min(const Observation& o) { return o.own_hand.min(); }

inline Card median(const Observation& o) {
  const auto cards = o.own_hand.cards();
  return cards[cards.size() / 2];
}

// Depends on the whole history, not just the current round.
inline Card history_driven(const Observation& o) {
  int acc = o.upcard;
  for (const auto& h : o.history) acc = acc * 7 + h.own * 3 + h.opponent + h.upcard;
  const auto cards = o.own_hand.cards();
  return cards[static_cast<std::size_t>(acc) % cards.size()];
}

// Arbitrary deterministic function of the observation.
inline DeterministicPolicy hashed(std::uint64_t salt) {
  return [salt](const Observation& o) {
    std::uint64_t h = salt;
    h = h * 131 + o.own_hand.bits();
    h = h * 131 + o.opponent_hand.bits();
    h = h * 131 + o.deck.bits();
    h = h * 131 + static_cast<std::uint64_t>(o.upcard);
    const auto cards = o.own_hand.cards();
    return cards[Rng(h).next_u64() % cards.size()];
  };
}

inline std::vector<std::pair<std::string, DeterministicPolicy>> family() {
  std::vector<std::pair<std::string, DeterministicPolicy>> out = {
      {"always-match", always_match}, {"always-max", always_max}, {"always-min", always_min},
      {"median", median},             {"history", history_driven},
  };
  for (std::uint64_t salt = 1; salt <= 5; ++salt)
    out.emplace_back("hashed-" + std::to_string(salt), hashed(salt));
  return out;
}

}  // namespace gops::opponents

#endif  // GOPS_TESTS_OPPONENTS_HPP_

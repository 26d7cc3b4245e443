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

#include "gops/card_set.hpp"

#include <charconv>

namespace gops {

std::string CardSet::to_string() const {
  std::string out = "{";
  bool first = true;
  for (Card c : cards()) {
    if (!first) out += ',';
    out += std::to_string(c);
    first = false;
  }
  return out + "}";
}

std::uint64_t rank_subset(CardSet s, int k) {
  if (s.size() != k)
    throw std::invalid_argument("rank_subset: set " + s.to_string() + " has " +
                                std::to_string(s.size()) + " cards, expected " +
                                std::to_string(k));
  std::uint64_t rank = 0;
  int i = 1;
  for (std::uint32_t b = s.bits(); b != 0; b &= b - 1, ++i)
    rank += binomial(std::countr_zero(b), i);
  return rank;
}

CardSet unrank_subset(std::uint64_t rank, int k, int n) {
  if (n < 0 || n > kMaxCards || k < 0 || k > n)
    throw std::out_of_range("unrank_subset: bad (k, n) = (" + std::to_string(k) + ", " +
                            std::to_string(n) + ")");
  if (rank >= binomial(n, k))
    throw std::out_of_range("unrank_subset: rank " + std::to_string(rank) +
                            " outside [0, C(" + std::to_string(n) + "," +
                            std::to_string(k) + "))");
  std::uint32_t bits = 0;
  int top = n;
  for (int i = k; i >= 1; --i) {
    // largest c < top with C(c, i) <= rank
    int c = top - 1;
    while (binomial(c, i) > rank) --c;
    bits |= 1u << c;
    rank -= binomial(c, i);
    top = c;
  }
  return CardSet(bits);
}

CardSet parse_card_list(const std::string& text) {
  CardSet out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string::npos) end = text.size();
    std::string token = text.substr(pos, end - pos);
    while (!token.empty() && token.front() == ' ') token.erase(token.begin());
    while (!token.empty() && token.back() == ' ') token.pop_back();
    if (!token.empty()) {
      int value = 0;
      auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
      if (ec != std::errc() || ptr != token.data() + token.size())
        throw std::invalid_argument("not a card: '" + token + "'");
      if (out.contains(value))
        throw std::invalid_argument("duplicate card " + token);
      out.insert(value);
    }
    pos = end + 1;
  }
  return out;
}

}  // namespace gops

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

#include "gops/solver.hpp"

namespace gops {

void validate(const SolveConfig& config) {
  if (config.n < 1 || config.n > 13)
    throw std::invalid_argument("n must be in 1..13, got " + std::to_string(config.n));
  if (config.workers < 1)
    throw std::invalid_argument("workers must be >= 1, got " + std::to_string(config.workers));
  if (config.max_layer > config.n)
    throw std::invalid_argument("max_layer " + std::to_string(config.max_layer) + " exceeds n");
  if (!(config.tolerance >= 0))
    throw std::invalid_argument("tolerance must be non-negative");
  if (config.arithmetic == Arithmetic::kRational && config.top_layer() > config.max_exact_n)
    throw std::invalid_argument("exact rational solve refused for n = " + std::to_string(config.n) +
                                " (limit " + std::to_string(config.max_exact_n) +
                                "); exact values grow to millions of digits");
}

std::uint64_t subgame_count(int n) {
  std::uint64_t total = 0;
  for (int j = 0; j <= n; ++j) total += static_cast<std::uint64_t>(j) * layer_size(n, j);
  return total;
}

std::uint64_t stored_value_count(int n) {
  std::uint64_t total = 0;
  for (int j = 0; j <= n; ++j) total += layer_size(n, j);
  return total;
}

namespace detail {

SubsetIndex make_subset_index(int n, int j) {
  SubsetIndex index;
  index.j = j;
  index.count = binomial(n, j);
  index.cards.resize(index.count);
  index.removal.resize(index.count);
  for (std::uint64_t r = 0; r < index.count; ++r) {
    const CardSet s = unrank_subset(r, j, n);
    const auto cards = s.cards();
    for (int t = 0; t < j; ++t) {
      index.cards[r][t] = static_cast<std::int8_t>(cards[t]);
      index.removal[r][t] = static_cast<std::uint32_t>(rank_subset(s.without(cards[t]), j - 1));
    }
  }
  return index;
}

}  // namespace detail
}  // namespace gops

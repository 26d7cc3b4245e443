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

#ifndef GOPS_VERIFY_HPP_
#define GOPS_VERIFY_HPP_

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "gops/card_set.hpp"
#include "gops/matrix_game.hpp"
#include "gops/rng.hpp"
#include "gops/scalar.hpp"
#include "gops/solver.hpp"
#include "gops/value_table.hpp"

namespace gops {

struct VerifyOptions {
  std::uint64_t samples = 1000;  // stage games spot-checked for exploitability
  std::uint64_t seed = 1;
  double antisymmetry_tolerance = 1e-9;  // ignored for exact tables
  double exploitability_tolerance = 1e-6;
};

enum class ViolationKind { kAntisymmetry, kDiagonal, kBound, kExploitability };

inline const char* violation_name(ViolationKind k) {
  switch (k) {
    case ViolationKind::kAntisymmetry: return "antisymmetry";
    case ViolationKind::kDiagonal: return "diagonal";
    case ViolationKind::kBound: return "bound";
    case ViolationKind::kExploitability: return "exploitability";
  }
  return "?";
}

struct Violation {
  ViolationKind kind;
  int layer;
  std::uint64_t index;
  double magnitude;
  std::string detail;
};

struct VerifyReport {
  std::vector<Violation> violations;
  std::uint64_t entries_checked = 0;
  std::uint64_t stage_games_sampled = 0;
  double max_antisymmetry_error = 0;
  double max_exploitability = 0;
  bool ok() const { return violations.empty(); }
};

namespace detail {

inline GameState state_at(int n, int j, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  return {unrank_subset(a, j, n), unrank_subset(b, j, n), unrank_subset(c, j, n)};
}

template <typename Scalar>
bool within(const Scalar& x, double tol) {
  if constexpr (ScalarTraits<Scalar>::kExact)
    return x == Scalar(0);
  else
    return std::abs(x) <= tol;
}

// |f| > bound (+ tol for floats)
template <typename Scalar>
bool exceeds(const Scalar& f, int bound, double tol) {
  if constexpr (ScalarTraits<Scalar>::kExact)
    return f > Scalar(bound) || f < Scalar(-bound);
  else
    return std::abs(f) > bound + tol;
}

}  // namespace detail

// Audits a complete table. Antisymmetry failures are attributed by
// recomputing both entries of the pair from the layer below, so a single
// corrupted value is reported at its own index.
template <typename Scalar>
VerifyReport verify_table(const ValueTable<Scalar>& table, const VerifyOptions& options = {}) {
  VerifyReport report;
  const int n = table.n();
  const double tol = ScalarTraits<Scalar>::kExact ? 0.0 : options.antisymmetry_tolerance;

  for (int j = 0; j <= n; ++j) {
    if (!table.has_layer(j)) continue;
    const auto values = table.layer(j);
    const std::uint64_t count = binomial(n, j);
    std::vector<int> deck_sums(count);
    for (std::uint64_t c = 0; c < count; ++c) deck_sums[c] = unrank_subset(c, j, n).sum();
    for (std::uint64_t a = 0; a < count; ++a) {
      for (std::uint64_t b = 0; b < count; ++b) {
        for (std::uint64_t c = 0; c < count; ++c) {
          const std::uint64_t at = layer_index(a, b, c, count);
          const Scalar& f = values[at];
          ++report.entries_checked;

          const int deck_sum = deck_sums[c];
          if (detail::exceeds(f, deck_sum, tol))
            report.violations.push_back({ViolationKind::kBound, j, at, to_double(f),
                                         "|f| exceeds deck sum " + std::to_string(deck_sum)});

          if (a == b) {
            if (!detail::within<Scalar>(f, tol))
              report.violations.push_back(
                  {ViolationKind::kDiagonal, j, at, to_double(f), "f(V,V,P) != 0"});
            continue;
          }
          if (a > b) continue;

          const std::uint64_t mirror_at = layer_index(b, a, c, count);
          const Scalar sum = f + values[mirror_at];
          const double err = std::abs(to_double(sum));
          report.max_antisymmetry_error = std::max(report.max_antisymmetry_error, err);
          if (detail::within<Scalar>(sum, tol)) continue;

          // Decide which side of the pair is wrong.
          std::vector<std::uint64_t> culprits;
          if (j >= 1 && table.has_layer(j - 1)) {
            const GameState s = detail::state_at(n, j, a, b, c);
            const Scalar recomputed = game_value<Scalar>(s, table.lookup());
            if (!detail::within<Scalar>(Scalar(recomputed - f), tol)) culprits.push_back(at);
            if (!detail::within<Scalar>(Scalar(-recomputed - values[mirror_at]), tol))
              culprits.push_back(mirror_at);
          }
          if (culprits.empty()) culprits.push_back(at);
          for (std::uint64_t bad : culprits)
            report.violations.push_back(
                {ViolationKind::kAntisymmetry, j, bad, err,
                 "f(V,Y,P) + f(Y,V,P) != 0 (pair " + std::to_string(at) + ", " +
                     std::to_string(mirror_at) + ")"});
        }
      }
    }
  }

  // Equilibrium spot checks on random stage games.
  Rng rng(options.seed);
  if (n >= 1) {
    for (std::uint64_t s = 0; s < options.samples; ++s) {
      const int j = 1 + static_cast<int>(rng.below(n));
      if (!table.has_layer(j) || !table.has_layer(j - 1)) continue;
      const std::uint64_t count = binomial(n, j);
      const std::uint64_t a = rng.below(count), b = rng.below(count), c = rng.below(count);
      const GameState state = detail::state_at(n, j, a, b, c);
      const auto deck = state.p().cards();
      const Card upcard = deck[rng.below(deck.size())];
      const auto matrix = payoff_matrix<Scalar>(state, upcard, table.lookup());
      const auto sol = solve(matrix);
      const double gap = to_double(exploitability(matrix, sol));
      ++report.stage_games_sampled;
      report.max_exploitability = std::max(report.max_exploitability, gap);
      if (gap > options.exploitability_tolerance ||
          (ScalarTraits<Scalar>::kExact && gap != 0.0))
        report.violations.push_back({ViolationKind::kExploitability, j,
                                     layer_index(a, b, c, count), gap,
                                     "upcard " + std::to_string(upcard)});
    }
  }
  return report;
}

}  // namespace gops

#endif  // GOPS_VERIFY_HPP_

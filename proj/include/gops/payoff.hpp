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

#ifndef GOPS_PAYOFF_HPP_
#define GOPS_PAYOFF_HPP_

#include <Eigen/Core>

#include <stdexcept>
#include <string>

#include "gops/card_set.hpp"
#include "gops/scalar.hpp"

namespace gops {

// Dense zero-sum payoff matrix; entry (i, j) is the margin to the row player
// when row plays its i-th card and column its j-th card (ascending order).
// Storage is bounded by kMaxCards so the common double case never allocates.
template <typename Scalar>
using PayoffMatrix =
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, kMaxCards, kMaxCards>;

// Probability of playing each card, ascending card order.
template <typename Scalar>
using MixedStrategy = Eigen::Matrix<Scalar, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxCards, 1>;

// Builds the stage-game matrix after `upcard` is revealed in `state`:
//   X(i, j) = upcard * sign(v_i - y_j) + f(v \ v_i, y \ y_j, p \ upcard)
// `lookup` is any callable GameState -> Scalar covering the one-card-smaller
// subgames; it is expected to throw on a miss.
template <typename Scalar, typename Lookup>
PayoffMatrix<Scalar> payoff_matrix(const GameState& state, Card upcard, Lookup&& lookup) {
  if (!state.p().contains(upcard))
    throw std::invalid_argument("upcard " + std::to_string(upcard) + " not in deck " +
                                state.p().to_string());
  const auto rows = state.v().cards();
  const auto cols = state.y().cards();
  const CardSet rest = state.p().without(upcard);
  PayoffMatrix<Scalar> x(rows.size(), cols.size());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      const GameState next(state.v().without(rows[i]), state.y().without(cols[j]), rest);
      x(i, j) = Scalar(upcard * sign(rows[i] - cols[j])) + Scalar(lookup(next));
    }
  }
  return x;
}

}  // namespace gops

#endif  // GOPS_PAYOFF_HPP_

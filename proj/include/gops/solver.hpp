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

#ifndef GOPS_SOLVER_HPP_
#define GOPS_SOLVER_HPP_

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <new>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "gops/card_set.hpp"
#include "gops/matrix_game.hpp"
#include "gops/payoff.hpp"
#include "gops/scalar.hpp"
#include "gops/value_table.hpp"

namespace gops {

struct SolveConfig {
  int n = 5;
  Arithmetic arithmetic = Arithmetic::kFloat64;
  int workers = 1;
  // Equilibrium tolerance reported with the table; the matrix-game routines
  // use the scalar's own tolerance (1e-9 for double, 0 for rationals).
  double tolerance = 1e-9;
  // Retain every layer. Otherwise only layers j - 1 and j are resident.
  bool keep_all_layers = false;
  // Solve only rank(V) < rank(Y) and fill the rest from f(V,Y,P) = -f(Y,V,P)
  // and f(V,V,P) = 0.
  bool symmetry_halving = true;
  // Exact tables grow enormous quickly; above this n the solve is refused.
  int max_exact_n = 5;
  // Stop after this layer (-1 = n). A truncated table still answers every
  // endgame of that size, e.g. two-card endgames of the 13-card game.
  int max_layer = -1;

  int top_layer() const { return max_layer < 0 ? n : max_layer; }
};

// Throws std::invalid_argument naming the offending field.
void validate(const SolveConfig& config);

struct SolveStats {
  std::uint64_t stage_solves = 0;     // matrix games solved
  std::uint64_t states_solved = 0;    // subgames evaluated through stage games
  std::uint64_t states_mirrored = 0;  // filled by antisymmetry
  std::uint64_t states_diagonal = 0;  // V == Y, set to zero
  std::array<std::uint64_t, 4> by_method{};  // indexed by SolveMethod
  std::vector<double> layer_seconds;
  double seconds = 0;
};

// Raised when a layer cannot be allocated or filled.
class ResourceExhausted : public std::runtime_error {
 public:
  ResourceExhausted(int layer, std::uint64_t index, const std::string& what)
      : std::runtime_error("resource exhausted at layer " + std::to_string(layer) + ", index " +
                           std::to_string(index) + ": " + what),
        layer_(layer),
        index_(index) {}
  int layer() const { return layer_; }
  std::uint64_t index() const { return index_; }

 private:
  int layer_;
  std::uint64_t index_;
};

// Stage games solved by a full DP without symmetry: sum_j j * C(n, j)^3.
std::uint64_t subgame_count(int n);
// Values stored across all layers: sum_j C(n, j)^3.
std::uint64_t stored_value_count(int n);

// Value of the stage game once `upcard` is turned up.
template <typename Scalar, typename Lookup>
GameSolution<Scalar> stage_value(const GameState& state, Card upcard, Lookup&& lookup) {
  return solve(payoff_matrix<Scalar>(state, upcard, lookup));
}

// f(V, Y, P): the average of the stage values over every possible upcard.
template <typename Scalar, typename Lookup>
Scalar game_value(const GameState& state, Lookup&& lookup) {
  if (state.size() == 0) return Scalar(0);
  Scalar total(0);
  for (Card upcard : state.p().cards()) total += stage_value<Scalar>(state, upcard, lookup).value;
  return total / Scalar(state.size());
}

// Recomputes the equilibrium of one stage game from the stored layer below it.
template <typename Scalar>
GameSolution<Scalar> strategy_for(const ValueTable<Scalar>& table, const GameState& state,
                                  Card upcard) {
  if (state.size() < 1)
    throw std::invalid_argument("strategy_for: the empty game has no decisions");
  if (state.v().max() > table.n() || state.y().max() > table.n() || state.p().max() > table.n())
    throw std::invalid_argument("strategy_for: state " + state.v().to_string() + " " +
                                state.y().to_string() + " " + state.p().to_string() +
                                " does not fit a table for n = " + std::to_string(table.n()));
  if (!table.has_layer(state.size() - 1))
    throw std::invalid_argument("strategy_for: table lacks layer " +
                                std::to_string(state.size() - 1));
  return stage_value<Scalar>(state, upcard, table.lookup());
}

namespace detail {

// For one layer j: every j-subset of 1..n in rank order, its cards, and the
// rank (within layer j - 1) of the subset with its t-th card removed.
struct SubsetIndex {
  int j = 0;
  std::uint64_t count = 0;
  std::vector<std::array<std::int8_t, kMaxCards>> cards;
  std::vector<std::array<std::uint32_t, kMaxCards>> removal;
};

SubsetIndex make_subset_index(int n, int j);

template <typename Scalar>
struct LayerContext {
  const SubsetIndex& subsets;
  std::span<const Scalar> previous;
  std::span<Scalar> current;
  std::uint64_t previous_count;
};

// Fills f for the pair of hands (a, b) across every deck c. Writes (a, b, c)
// and, when `mirror` is set, (b, a, c).
template <typename Scalar>
void solve_hand_pair(const LayerContext<Scalar>& ctx, std::uint64_t a, std::uint64_t b,
                     bool mirror, SolveStats& stats) {
  const int j = ctx.subsets.j;
  const std::uint64_t count = ctx.subsets.count;
  const std::uint64_t prev = ctx.previous_count;
  const auto& v_cards = ctx.subsets.cards[a];
  const auto& y_cards = ctx.subsets.cards[b];
  const auto& v_rem = ctx.subsets.removal[a];
  const auto& y_rem = ctx.subsets.removal[b];

  PayoffMatrix<Scalar> signs(j, j);
  for (int i = 0; i < j; ++i)
    for (int l = 0; l < j; ++l) signs(i, l) = Scalar(sign(v_cards[i] - y_cards[l]));

  PayoffMatrix<Scalar> x(j, j);
  for (std::uint64_t c = 0; c < count; ++c) {
    const auto& p_cards = ctx.subsets.cards[c];
    const auto& p_rem = ctx.subsets.removal[c];
    Scalar total(0);
    for (int t = 0; t < j; ++t) {
      const Scalar upcard(static_cast<int>(p_cards[t]));
      for (int i = 0; i < j; ++i)
        for (int l = 0; l < j; ++l)
          x(i, l) = upcard * signs(i, l) +
                    ctx.previous[layer_index(v_rem[i], y_rem[l], p_rem[t], prev)];
      const GameSolution<Scalar> sol = solve(x);
      total += sol.value;
      ++stats.by_method[static_cast<int>(sol.method)];
    }
    stats.stage_solves += j;
    ++stats.states_solved;
    const Scalar value = total / Scalar(j);
    ctx.current[layer_index(a, b, c, count)] = value;
    if (mirror) {
      ctx.current[layer_index(b, a, c, count)] = -value;
      ++stats.states_mirrored;
    }
  }
}

inline void merge(SolveStats& into, const SolveStats& from) {
  into.stage_solves += from.stage_solves;
  into.states_solved += from.states_solved;
  into.states_mirrored += from.states_mirrored;
  into.states_diagonal += from.states_diagonal;
  for (std::size_t m = 0; m < into.by_method.size(); ++m) into.by_method[m] += from.by_method[m];
}

template <typename Scalar>
void solve_layer(const SolveConfig& config, int j, std::span<const Scalar> previous,
                 std::span<Scalar> current, SolveStats& stats) {
  const SubsetIndex subsets = make_subset_index(config.n, j);
  const LayerContext<Scalar> ctx{subsets, previous, current, binomial(config.n, j - 1)};
  const std::uint64_t count = subsets.count;
  const std::uint64_t pairs = count * count;
  constexpr std::uint64_t kChunk = 16;

  std::atomic<std::uint64_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex mu;

  auto work = [&] {
    SolveStats local;
    std::uint64_t pair = 0;
    try {
      while (!failed.load(std::memory_order_relaxed)) {
        const std::uint64_t begin = next.fetch_add(kChunk);
        if (begin >= pairs) break;
        const std::uint64_t end = std::min(pairs, begin + kChunk);
        for (pair = begin; pair < end; ++pair) {
          const std::uint64_t a = pair / count;
          const std::uint64_t b = pair % count;
          if (!config.symmetry_halving) {
            solve_hand_pair(ctx, a, b, false, local);
          } else if (a == b) {
            for (std::uint64_t c = 0; c < count; ++c) current[layer_index(a, a, c, count)] = Scalar(0);
            local.states_diagonal += count;
          } else if (a < b) {
            solve_hand_pair(ctx, a, b, true, local);
          }
        }
      }
    } catch (const std::bad_alloc& e) {
      std::lock_guard lock(mu);
      if (!error)
        error = std::make_exception_ptr(
            ResourceExhausted(j, layer_index(pair / count, pair % count, 0, count), e.what()));
      failed = true;
    } catch (...) {
      std::lock_guard lock(mu);
      if (!error) error = std::current_exception();
      failed = true;
    }
    std::lock_guard lock(mu);
    merge(stats, local);
  };

  const int workers = std::max(1, config.workers);
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace detail

// Called once per finished layer, in increasing j, before older layers are
// released.
template <typename Scalar>
using LayerSink = std::function<void(int j, std::span<const Scalar> values)>;

// Bottom-up DP over all subgames of the n-card game. Layer j holds every
// (V, Y, P) with |V| = |Y| = |P| = j and is computed from layer j - 1 only.
template <typename Scalar>
ValueTable<Scalar> solve_all(const SolveConfig& config, SolveStats* stats_out = nullptr,
                             const LayerSink<Scalar>& sink = {}) {
  validate(config);
  if (config.arithmetic != ScalarTraits<Scalar>::kArithmetic)
    throw std::invalid_argument("solve_all: configured arithmetic does not match scalar type");

  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  SolveStats stats;
  ValueTable<Scalar> table(config.n);

  table.set_layer(0, std::vector<Scalar>{Scalar(0)});
  stats.layer_seconds.push_back(0);
  if (sink) sink(0, table.layer(0));

  for (int j = 1; j <= config.top_layer(); ++j) {
    const auto layer_start = Clock::now();
    std::vector<Scalar> current;
    try {
      current.resize(layer_size(config.n, j));
    } catch (const std::bad_alloc& e) {
      throw ResourceExhausted(j, 0, std::string("allocating ") +
                                        std::to_string(layer_size(config.n, j)) + " values");
    }
    detail::solve_layer<Scalar>(config, j, table.layer(j - 1), current, stats);
    table.set_layer(j, std::move(current));
    if (sink) sink(j, table.layer(j));
    if (!config.keep_all_layers && j >= 2) table.drop_layer(j - 2);
    stats.layer_seconds.push_back(std::chrono::duration<double>(Clock::now() - layer_start).count());
  }
  stats.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  if (stats_out) *stats_out = std::move(stats);
  return table;
}

}  // namespace gops

#endif  // GOPS_SOLVER_HPP_

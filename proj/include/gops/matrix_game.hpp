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

#ifndef GOPS_MATRIX_GAME_HPP_
#define GOPS_MATRIX_GAME_HPP_

#include <Eigen/Core>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gops/payoff.hpp"
#include "gops/scalar.hpp"

// Two-player zero-sum matrix games. The row player maximizes. Every routine is
// templated on the scalar so the same code runs in double and exact rational
// arithmetic; in rational mode all tolerances are zero.
namespace gops {

enum class SolveMethod { kTrivial, kSaddle, kClosed2x2, kSimplex };

inline const char* method_name(SolveMethod m) {
  switch (m) {
    case SolveMethod::kTrivial: return "trivial";
    case SolveMethod::kSaddle: return "saddle";
    case SolveMethod::kClosed2x2: return "closed2x2";
    case SolveMethod::kSimplex: return "simplex";
  }
  return "?";
}

template <typename Scalar>
struct GameSolution {
  Scalar value;
  MixedStrategy<Scalar> row;
  MixedStrategy<Scalar> col;
  SolveMethod method = SolveMethod::kTrivial;
};

struct SaddlePoint {
  Eigen::Index row;
  Eigen::Index col;
};

enum class Side { kRow, kCol };

template <typename Scalar>
struct BestResponse {
  Scalar value;
  Eigen::Index index;
};

namespace detail {

template <typename Scalar>
MixedStrategy<Scalar> pure(Eigen::Index size, Eigen::Index at) {
  MixedStrategy<Scalar> s = MixedStrategy<Scalar>::Zero(size);
  s(at) = Scalar(1);
  return s;
}

// Float strategies come out of elimination with tiny negative noise; clamp it
// and renormalize. No-op for exact scalars.
template <typename Scalar>
void clean_strategy(MixedStrategy<Scalar>& s) {
  if constexpr (!ScalarTraits<Scalar>::kExact) {
    for (auto& p : s)
      if (p < 0 && p >= -tolerance<Scalar>()) p = 0;
    const Scalar total = s.sum();
    if (total > 0) s /= total;
  }
}

template <typename Scalar>
void require_dims(const PayoffMatrix<Scalar>& m, Eigen::Index rows, Eigen::Index cols) {
  if (m.rows() != rows || m.cols() != cols)
    throw std::invalid_argument("dimension mismatch: matrix is " + std::to_string(m.rows()) +
                                "x" + std::to_string(m.cols()) + ", strategies imply " +
                                std::to_string(rows) + "x" + std::to_string(cols));
}

}  // namespace detail

// An entry that is the minimum of its row and the maximum of its column (the
// row player's guaranteed floor meets the column player's ceiling). Ties go to
// the smallest (row, col) in row-major order.
template <typename Scalar>
std::optional<SaddlePoint> find_saddle(const PayoffMatrix<Scalar>& m) {
  if (m.size() == 0) return std::nullopt;
  const Scalar tol = tolerance<Scalar>();
  const auto row_min = m.rowwise().minCoeff().eval();
  const auto col_max = m.colwise().maxCoeff().eval();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (m(i, j) <= row_min(i) + tol && m(i, j) >= col_max(j) - tol) return SaddlePoint{i, j};
  return std::nullopt;
}

// Closed form for a 2x2 game without a saddle point:
//   value = (ad - bc) / (a - b - c + d)
template <typename Scalar>
GameSolution<Scalar> solve_2x2(const PayoffMatrix<Scalar>& m) {
  if (m.rows() != 2 || m.cols() != 2)
    throw std::invalid_argument("solve_2x2 needs a 2x2 matrix");
  if (find_saddle(m))
    throw std::invalid_argument("solve_2x2: matrix has a saddle point");
  const Scalar& a = m(0, 0);
  const Scalar& b = m(0, 1);
  const Scalar& c = m(1, 0);
  const Scalar& d = m(1, 1);
  const Scalar delta = a - b - c + d;
  // Without a saddle the diagonals strictly dominate the off-diagonals (or vice
  // versa), so delta is bounded away from zero.
  if (delta == Scalar(0)) throw std::invalid_argument("solve_2x2: degenerate matrix");
  GameSolution<Scalar> s;
  s.value = (a * d - b * c) / delta;
  s.row.resize(2);
  s.row << (d - c) / delta, (a - b) / delta;
  s.col.resize(2);
  s.col << (d - b) / delta, (a - c) / delta;
  s.method = SolveMethod::kClosed2x2;
  detail::clean_strategy(s.row);
  detail::clean_strategy(s.col);
  return s;
}

// General m x n game by the simplex method.
//
// Payoffs are shifted to be >= 1, after which the column player's problem
//   maximize sum_j w_j  subject to  B w <= 1,  w >= 0
// starts feasible at the slack basis and is bounded. At the optimum z = sum w,
// the game value of B is 1/z, the column strategy is w/z, and the objective
// row's slack coefficients are the duals u with row strategy u/z. Pivoting
// follows Bland's rule, so degenerate games (common here) cannot cycle.
template <typename Scalar>
GameSolution<Scalar> solve_lp(const PayoffMatrix<Scalar>& m) {
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
  if (rows < 1 || cols < 1) throw std::invalid_argument("solve_lp: empty matrix");

  using Tableau = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor,
                                kMaxCards + 1, 2 * kMaxCards + 1>;
  const Scalar tol = tolerance<Scalar>();
  const Scalar shift = Scalar(1) - m.minCoeff();
  const Eigen::Index rhs = cols + rows;

  Tableau t = Tableau::Zero(rows + 1, cols + rows + 1);
  t.topLeftCorner(rows, cols) = m.array() + shift;
  t.block(0, cols, rows, rows).setIdentity();
  t.col(rhs).head(rows).setOnes();
  t.row(rows).head(cols).setConstant(Scalar(-1));

  // basis[r] = variable index (columns first, then slacks)
  std::vector<Eigen::Index> basis(rows);
  for (Eigen::Index r = 0; r < rows; ++r) basis[r] = cols + r;

  const Eigen::Index max_iterations = 64 * (rows + cols) * (rows + cols);
  for (Eigen::Index iter = 0;; ++iter) {
    if (iter > max_iterations) throw std::runtime_error("solve_lp: iteration limit reached");

    Eigen::Index enter = -1;
    for (Eigen::Index c = 0; c < rhs; ++c) {
      if (t(rows, c) < -tol) {
        enter = c;
        break;
      }
    }
    if (enter < 0) break;

    Eigen::Index leave = -1;
    Scalar best_ratio(0);
    for (Eigen::Index r = 0; r < rows; ++r) {
      if (t(r, enter) <= tol) continue;
      const Scalar ratio = t(r, rhs) / t(r, enter);
      if (leave < 0 || ratio < best_ratio - tol ||
          (ratio <= best_ratio + tol && basis[r] < basis[leave])) {
        leave = r;
        best_ratio = ratio;
      }
    }
    if (leave < 0) throw std::logic_error("solve_lp: unbounded direction in a bounded game");

    const Scalar pivot = t(leave, enter);
    t.row(leave) /= pivot;
    t(leave, enter) = Scalar(1);
    for (Eigen::Index r = 0; r <= rows; ++r) {
      if (r == leave || t(r, enter) == Scalar(0)) continue;
      const Scalar factor = t(r, enter);
      t.row(r) -= factor * t.row(leave);
      t(r, enter) = Scalar(0);
    }
    basis[leave] = enter;
  }

  const Scalar z = t(rows, rhs);
  GameSolution<Scalar> s;
  s.col = MixedStrategy<Scalar>::Zero(cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    if (basis[r] < cols) s.col(basis[r]) = t(r, rhs) / z;
  s.row = t.row(rows).segment(cols, rows).transpose() / z;
  s.value = Scalar(1) / z - shift;
  s.method = SolveMethod::kSimplex;
  detail::clean_strategy(s.row);
  detail::clean_strategy(s.col);
  return s;
}

// Dispatch: 1x1, saddle point, 2x2 closed form, then simplex.
template <typename Scalar>
GameSolution<Scalar> solve(const PayoffMatrix<Scalar>& m) {
  if (m.rows() < 1 || m.cols() < 1) throw std::invalid_argument("solve: empty matrix");
  if (m.rows() == 1 && m.cols() == 1)
    return {m(0, 0), detail::pure<Scalar>(1, 0), detail::pure<Scalar>(1, 0),
            SolveMethod::kTrivial};
  if (auto saddle = find_saddle(m))
    return {m(saddle->row, saddle->col), detail::pure<Scalar>(m.rows(), saddle->row),
            detail::pure<Scalar>(m.cols(), saddle->col), SolveMethod::kSaddle};
  if (m.rows() == 2 && m.cols() == 2) return solve_2x2(m);
  return solve_lp(m);
}

// The best pure reply to `opponent`. For Side::kRow the opponent is the column
// player and the reply maximizes; for Side::kCol it minimizes. Ties go to the
// smallest index.
template <typename Scalar>
BestResponse<Scalar> best_response_value(const PayoffMatrix<Scalar>& m,
                                         const MixedStrategy<Scalar>& opponent, Side side) {
  const Scalar tol = tolerance<Scalar>();
  if (side == Side::kRow) {
    detail::require_dims(m, m.rows(), opponent.size());
    const auto payoff = (m * opponent).eval();
    BestResponse<Scalar> best{payoff(0), 0};
    for (Eigen::Index i = 1; i < payoff.size(); ++i)
      if (payoff(i) > best.value + tol) best = {payoff(i), i};
    return best;
  }
  detail::require_dims(m, opponent.size(), m.cols());
  const auto payoff = (opponent.transpose() * m).eval();
  BestResponse<Scalar> best{payoff(0), 0};
  for (Eigen::Index j = 1; j < payoff.size(); ++j)
    if (payoff(j) < best.value - tol) best = {payoff(j), j};
  return best;
}

// Best-response gap max_i (M col)_i - min_j (row^T M)_j; zero exactly at an
// equilibrium.
template <typename Scalar>
Scalar exploitability(const PayoffMatrix<Scalar>& m, const MixedStrategy<Scalar>& row,
                      const MixedStrategy<Scalar>& col) {
  detail::require_dims(m, row.size(), col.size());
  const Scalar gap = (m * col).maxCoeff() - (row.transpose() * m).minCoeff();
  if constexpr (!ScalarTraits<Scalar>::kExact) {
    if (gap < 0) return Scalar(0);
  }
  return gap;
}

template <typename Scalar>
Scalar exploitability(const PayoffMatrix<Scalar>& m, const GameSolution<Scalar>& sol) {
  return exploitability(m, sol.row, sol.col);
}

}  // namespace gops

#endif  // GOPS_MATRIX_GAME_HPP_

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

#ifndef GOPS_TESTS_ORACLES_SUPPORT_ENUMERATION_HPP_
#define GOPS_TESTS_ORACLES_SUPPORT_ENUMERATION_HPP_

// Test-only equilibrium oracle for zero-sum matrix games, deliberately
// independent of the simplex code: it enumerates square sub-matrices (I, J),
// solves the equalizing systems exactly, and accepts the first pair that is an
// equilibrium of the whole game. Some extreme equilibrium is always supported
// on a square sub-matrix whose bordered system is nonsingular, so the search
// cannot come back empty.

#include <optional>
#include <stdexcept>
#include <vector>

#include "gops/scalar.hpp"

namespace gops::oracle {

using RationalMatrix = std::vector<std::vector<Rational>>;

struct Equilibrium {
  Rational value;
  std::vector<Rational> row;
  std::vector<Rational> col;
};

namespace detail {

// Solves a square system in place; nullopt when singular.
inline std::optional<std::vector<Rational>> gauss(RationalMatrix a, std::vector<Rational> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(a[p], a[c]);
    std::swap(b[p], b[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      const Rational f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  for (std::size_t r = 0; r < n; ++r) b[r] /= a[r][r];
  return b;
}

// Weights w over `support` (indices into the other player's strategies) with
// sum 1 that equalize the payoff across `targets` to a common value.
// `entry(t, s)` returns the payoff for target t against support s.
template <typename Entry>
std::optional<std::vector<Rational>> equalize(const std::vector<int>& targets,
                                              const std::vector<int>& support, Entry entry) {
  const std::size_t k = support.size();
  RationalMatrix a(k + 1, std::vector<Rational>(k + 1));
  std::vector<Rational> b(k + 1);
  for (std::size_t t = 0; t < k; ++t) {
    for (std::size_t s = 0; s < k; ++s) a[t][s] = entry(targets[t], support[s]);
    a[t][k] = -1;
  }
  for (std::size_t s = 0; s < k; ++s) a[k][s] = 1;
  b[k] = 1;
  return gauss(std::move(a), std::move(b));
}

inline void subsets(int n, int k, int from, std::vector<int>& cur,
                    std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int i = from; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

inline std::vector<std::vector<int>> subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  subsets(n, k, 0, cur, out);
  return out;
}

}  // namespace detail

inline Equilibrium solve_by_support_enumeration(const RationalMatrix& m) {
  const int rows = static_cast<int>(m.size());
  const int cols = rows ? static_cast<int>(m[0].size()) : 0;
  if (rows == 0 || cols == 0) throw std::invalid_argument("empty matrix");

  for (int k = 1; k <= std::min(rows, cols); ++k) {
    const auto row_sets = detail::subsets(rows, k);
    const auto col_sets = detail::subsets(cols, k);
    for (const auto& rs : row_sets) {
      for (const auto& cs : col_sets) {
        // Row mix over rs makes every column in cs pay the same.
        auto x = detail::equalize(cs, rs, [&](int c, int r) { return m[r][c]; });
        if (!x) continue;
        auto y = detail::equalize(rs, cs, [&](int r, int c) { return m[r][c]; });
        if (!y) continue;
        const Rational v = (*x)[k];
        if ((*y)[k] != v) continue;
        bool ok = true;
        for (int i = 0; i < k && ok; ++i) ok = (*x)[i] >= 0 && (*y)[i] >= 0;
        if (!ok) continue;

        Equilibrium e{v, std::vector<Rational>(rows), std::vector<Rational>(cols)};
        for (int i = 0; i < k; ++i) {
          e.row[rs[i]] = (*x)[i];
          e.col[cs[i]] = (*y)[i];
        }
        for (int c = 0; c < cols && ok; ++c) {
          Rational pay = 0;
          for (int r = 0; r < rows; ++r) pay += e.row[r] * m[r][c];
          ok = pay >= v;
        }
        for (int r = 0; r < rows && ok; ++r) {
          Rational pay = 0;
          for (int c = 0; c < cols; ++c) pay += m[r][c] * e.col[c];
          ok = pay <= v;
        }
        if (ok) return e;
      }
    }
  }
  throw std::logic_error("support enumeration found no equilibrium");
}

}  // namespace gops::oracle

#endif  // GOPS_TESTS_ORACLES_SUPPORT_ENUMERATION_HPP_

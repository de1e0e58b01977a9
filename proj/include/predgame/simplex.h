// Copyright 2026 The predgame Authors
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

#ifndef PREDGAME_SIMPLEX_H_
#define PREDGAME_SIMPLEX_H_

#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

namespace predgame {

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

template <typename T>
struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<T> x;
  T value{};
};

// Dense two-phase simplex for  max c.x  s.t.  A x <= b, x >= 0.
// Pivoting follows Bland's rule so exact (rational) runs always terminate.
// `tol` is the zero threshold: 0 for exact scalars, small for doubles.
template <typename T>
class DenseSimplex {
 public:
  DenseSimplex(const std::vector<std::vector<T>>& a, const std::vector<T>& b,
               const std::vector<T>& c, T tol)
      : m_(b.size()),
        n_(c.size()),
        tol_(std::move(tol)),
        basis_(m_),
        nonbasis_(n_ + 1),
        d_(m_ + 2, std::vector<T>(n_ + 2)) {
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) d_[i][j] = a[i][j];
      basis_[i] = static_cast<long>(n_ + i);
      d_[i][n_] = -1;
      d_[i][n_ + 1] = b[i];
    }
    for (std::size_t j = 0; j < n_; ++j) {
      nonbasis_[j] = static_cast<long>(j);
      d_[m_][j] = -c[j];
    }
    nonbasis_[n_] = -1;
    d_[m_ + 1][n_] = 1;
  }

  LpSolution<T> Solve() {
    LpSolution<T> out;
    std::size_t r = 0;
    for (std::size_t i = 1; i < m_; ++i) {
      if (d_[i][n_ + 1] < d_[r][n_ + 1]) r = i;
    }
    if (m_ > 0 && d_[r][n_ + 1] < -tol_) {
      Pivot(r, n_);
      if (!Run(/*phase=*/1) || d_[m_ + 1][n_ + 1] < -tol_) {
        out.status = LpStatus::kInfeasible;
        return out;
      }
      for (std::size_t i = 0; i < m_; ++i) {
        if (basis_[i] != -1) continue;
        std::size_t s = 0;
        bool found = false;
        for (std::size_t j = 0; j <= n_; ++j) {
          if (!found || d_[i][j] < d_[i][s] ||
              (d_[i][j] == d_[i][s] && nonbasis_[j] < nonbasis_[s])) {
            s = j;
            found = true;
          }
        }
        Pivot(i, s);
      }
    }
    if (!Run(/*phase=*/2)) {
      out.status = LpStatus::kUnbounded;
      return out;
    }
    out.status = LpStatus::kOptimal;
    out.x.assign(n_, T(0));
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] >= 0 && static_cast<std::size_t>(basis_[i]) < n_) {
        out.x[basis_[i]] = d_[i][n_ + 1];
      }
    }
    out.value = d_[m_][n_ + 1];
    return out;
  }

 private:
  void Pivot(std::size_t r, std::size_t s) {
    const T inv = T(1) / d_[r][s];
    for (std::size_t i = 0; i < m_ + 2; ++i) {
      if (i == r || d_[i][s] == 0) continue;
      const T factor = d_[i][s] * inv;
      for (std::size_t j = 0; j < n_ + 2; ++j) {
        if (j != s) d_[i][j] -= d_[r][j] * factor;
      }
      d_[i][s] = -factor;
    }
    for (std::size_t j = 0; j < n_ + 2; ++j) {
      if (j != s) d_[r][j] *= inv;
    }
    d_[r][s] = inv;
    std::swap(basis_[r], nonbasis_[s]);
  }

  // Bland's rule: entering = lowest variable id with negative reduced cost,
  // leaving = minimum ratio with lowest basic id on ties.
  bool Run(int phase) {
    const std::size_t row = phase == 1 ? m_ + 1 : m_;
    while (true) {
      long best_id = std::numeric_limits<long>::max();
      std::size_t s = n_ + 1;
      for (std::size_t j = 0; j <= n_; ++j) {
        if (phase == 2 && nonbasis_[j] == -1) continue;
        if (d_[row][j] < -tol_ && nonbasis_[j] < best_id) {
          best_id = nonbasis_[j];
          s = j;
        }
      }
      if (s == n_ + 1) return true;
      std::size_t r = m_;
      for (std::size_t i = 0; i < m_; ++i) {
        if (!(d_[i][s] > tol_)) continue;
        if (r == m_) {
          r = i;
          continue;
        }
        // Compare ratios b_i/a_is against b_r/a_rs without dividing.
        const T lhs = d_[i][n_ + 1] * d_[r][s];
        const T rhs = d_[r][n_ + 1] * d_[i][s];
        if (lhs < rhs || (lhs == rhs && basis_[i] < basis_[r])) r = i;
      }
      if (r == m_) return false;
      Pivot(r, s);
    }
  }

  std::size_t m_;
  std::size_t n_;
  T tol_;
  std::vector<long> basis_;
  std::vector<long> nonbasis_;
  std::vector<std::vector<T>> d_;
};

}  // namespace predgame

#endif  // PREDGAME_SIMPLEX_H_

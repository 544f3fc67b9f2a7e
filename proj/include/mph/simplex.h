// Copyright 2026 The MPH Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MPH_SIMPLEX_H_
#define MPH_SIMPLEX_H_

#include <cmath>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace mph {

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

template <class T>
struct SimplexTraits {
  static T Eps() { return T(1e-9); }
  static T Abs(const T& x) { return std::abs(x); }
};

template <>
struct SimplexTraits<mpq_class> {
  static mpq_class Eps() { return mpq_class(0); }
  static mpq_class Abs(const mpq_class& x) { return abs(x); }
};

template <class T>
struct LpResult {
  LpStatus status = LpStatus::kIterationLimit;
  T objective = T(0);
  std::vector<T> x;
  // One multiplier per constraint row; nonnegative at an optimum.
  std::vector<T> duals;
  long iterations = 0;
  bool used_bland = false;
};

// Dense two-phase tableau simplex for
//   maximize c.x  subject to  A x <= b,  x >= 0.
// Entering columns follow Dantzig's rule; after a streak of degenerate pivots
// the solver switches to Bland's rule until progress resumes.
template <class T>
class DenseSimplex {
 public:
  DenseSimplex(const std::vector<std::vector<T>>& a, const std::vector<T>& b,
               const std::vector<T>& c)
      : m_(static_cast<int>(b.size())),
        n_(static_cast<int>(c.size())),
        w_(n_ + 2),
        nonbasic_(n_ + 1),
        basic_(m_),
        d_(static_cast<std::size_t>(m_ + 2) * w_, T(0)) {
    for (int i = 0; i < m_; ++i) {
      for (int j = 0; j < n_; ++j) At(i, j) = a[i][j];
      basic_[i] = n_ + i;
      At(i, n_) = T(-1);
      At(i, n_ + 1) = b[i];
    }
    for (int j = 0; j < n_; ++j) {
      nonbasic_[j] = j;
      At(m_, j) = -c[j];
    }
    nonbasic_[n_] = -1;
    At(m_ + 1, n_) = T(1);
  }

  LpResult<T> Solve(long max_iterations = 1000000) {
    iteration_limit_ = max_iterations;
    LpResult<T> result;
    int r = 0;
    for (int i = 1; i < m_; ++i) {
      if (At(i, n_ + 1) < At(r, n_ + 1)) r = i;
    }
    if (m_ > 0 && At(r, n_ + 1) < -eps_) {
      Pivot(r, n_);
      const Outcome phase1 = Run(2);
      if (phase1 == Outcome::kLimit) return Finish(result, LpStatus::kIterationLimit);
      if (phase1 != Outcome::kOptimal || At(m_ + 1, n_ + 1) < -eps_) {
        return Finish(result, LpStatus::kInfeasible);
      }
      for (int i = 0; i < m_; ++i) {
        if (basic_[i] != -1) continue;
        int s = 0;
        for (int j = 1; j <= n_; ++j) {
          if (Less(At(i, j), nonbasic_[j], At(i, s), nonbasic_[s])) s = j;
        }
        Pivot(i, s);
      }
    }
    const Outcome phase2 = Run(1);
    if (phase2 == Outcome::kLimit) return Finish(result, LpStatus::kIterationLimit);
    if (phase2 == Outcome::kUnbounded) return Finish(result, LpStatus::kUnbounded);
    result.x.assign(n_, T(0));
    for (int i = 0; i < m_; ++i) {
      if (basic_[i] >= 0 && basic_[i] < n_) result.x[basic_[i]] = At(i, n_ + 1);
    }
    result.duals.assign(m_, T(0));
    for (int j = 0; j <= n_; ++j) {
      if (nonbasic_[j] >= n_) result.duals[nonbasic_[j] - n_] = At(m_, j);
    }
    result.objective = At(m_, n_ + 1);
    return Finish(result, LpStatus::kOptimal);
  }

 private:
  enum class Outcome { kOptimal, kUnbounded, kLimit };

  T& At(int i, int j) { return d_[static_cast<std::size_t>(i) * w_ + j]; }

  static bool Less(const T& a, int ia, const T& b, int ib) {
    return a < b || (a == b && ia < ib);
  }

  LpResult<T>& Finish(LpResult<T>& r, LpStatus status) {
    r.status = status;
    r.iterations = iterations_;
    r.used_bland = used_bland_;
    return r;
  }

  void Pivot(int r, int s) {
    const T inv = T(1) / At(r, s);
    T* row_r = &At(r, 0);
    nz_.clear();
    for (int j = 0; j < w_; ++j) {
      if (row_r[j] != T(0)) nz_.push_back(j);
    }
    for (int i = 0; i < m_ + 2; ++i) {
      if (i == r) continue;
      T* row_i = &At(i, 0);
      if (SimplexTraits<T>::Abs(row_i[s]) <= eps_) continue;
      const T factor = row_i[s] * inv;
      for (int j : nz_) row_i[j] -= row_r[j] * factor;
      row_i[s] = row_r[s] * factor;
    }
    for (int j : nz_) {
      if (j != s) row_r[j] *= inv;
    }
    for (int i = 0; i < m_ + 2; ++i) {
      if (i != r) At(i, s) *= -inv;
    }
    At(r, s) = inv;
    std::swap(basic_[r], nonbasic_[s]);
    ++iterations_;
  }

  Outcome Run(int phase) {
    const int x = m_ + phase - 1;
    int degenerate_streak = 0;
    while (true) {
      if (iterations_ >= iteration_limit_) return Outcome::kLimit;
      const bool bland = degenerate_streak >= kDegenerateStreak;
      used_bland_ = used_bland_ || bland;
      int s = -1;
      for (int j = 0; j <= n_; ++j) {
        if (nonbasic_[j] == -phase) continue;
        if (bland) {
          if (At(x, j) < -eps_ && (s == -1 || nonbasic_[j] < nonbasic_[s])) {
            s = j;
          }
        } else if (s == -1 ||
                   Less(At(x, j), nonbasic_[j], At(x, s), nonbasic_[s])) {
          s = j;
        }
      }
      if (s == -1 || At(x, s) >= -eps_) return Outcome::kOptimal;
      int r = -1;
      T best_ratio(0);
      for (int i = 0; i < m_; ++i) {
        if (At(i, s) <= eps_) continue;
        const T ratio = At(i, n_ + 1) / At(i, s);
        if (r == -1 || Less(ratio, basic_[i], best_ratio, basic_[r])) {
          r = i;
          best_ratio = ratio;
        }
      }
      if (r == -1) return Outcome::kUnbounded;
      degenerate_streak =
          SimplexTraits<T>::Abs(best_ratio) <= eps_ ? degenerate_streak + 1 : 0;
      Pivot(r, s);
    }
  }

  static constexpr int kDegenerateStreak = 50;

  int m_;
  int n_;
  int w_;
  std::vector<int> nonbasic_;
  std::vector<int> basic_;
  std::vector<T> d_;
  std::vector<int> nz_;
  T eps_ = SimplexTraits<T>::Eps();
  long iterations_ = 0;
  long iteration_limit_ = 0;
  bool used_bland_ = false;
};

template <class T>
LpResult<T> SolveLp(const std::vector<std::vector<T>>& a,
                    const std::vector<T>& b, const std::vector<T>& c,
                    long max_iterations = 1000000) {
  return DenseSimplex<T>(a, b, c).Solve(max_iterations);
}

inline const char* LpStatusName(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
    case LpStatus::kIterationLimit:
      return "iteration-limit";
  }
  return "unknown";
}

}  // namespace mph

#endif  // MPH_SIMPLEX_H_

#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "zch/poly/linear_system.hpp"

namespace zch::poly {

enum class LpStatus { Optimal, Unbounded, Infeasible };

template <class T>
struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  T objective{};
  std::vector<T> point;  // in the original free variables
};

// Dense two-phase simplex with Bland's rule: maximize c.x subject to
// A x <= b with x free (internally split into nonnegative pairs).
// Exact when T is Rational (tol = 0).
template <class T>
class Simplex {
 public:
  Simplex(const std::vector<std::vector<T>>& A, const std::vector<T>& b,
          T tol = ArithTraits<T>::default_tol)
      : n_(A.empty() ? 0 : A[0].size()), m_(A.size()), tol_(tol) {
    // columns: [xp(n) | xn(n) | slack(m) | artificial(k)], rhs last
    std::vector<bool> needs_art(m_);
    int k = 0;
    for (std::size_t i = 0; i < m_; ++i)
      if (b[i] < T(0)) {
        needs_art[i] = true;
        ++k;
      }
    ncols_ = 2 * n_ + m_ + static_cast<std::size_t>(k);
    art_begin_ = 2 * n_ + m_;
    tab_.assign(m_, std::vector<T>(ncols_ + 1, T(0)));
    basis_.resize(m_);
    std::size_t art = art_begin_;
    for (std::size_t i = 0; i < m_; ++i) {
      const T sign = needs_art[i] ? T(-1) : T(1);
      for (std::size_t j = 0; j < n_; ++j) {
        tab_[i][j] = sign * A[i][j];
        tab_[i][n_ + j] = -sign * A[i][j];
      }
      tab_[i][2 * n_ + i] = sign;  // slack
      tab_[i][ncols_] = sign * b[i];
      if (needs_art[i]) {
        tab_[i][art] = T(1);
        basis_[i] = art++;
      } else {
        basis_[i] = 2 * n_ + i;
      }
    }
  }

  LpResult<T> maximize(const std::vector<T>& c_orig) {
    LpResult<T> res;
    if (art_begin_ < ncols_) {
      // phase 1: drive the artificials to zero
      std::vector<T> c1(ncols_, T(0));
      for (std::size_t j = art_begin_; j < ncols_; ++j) c1[j] = T(-1);
      if (!run(c1, /*allow_art=*/true)) throw std::logic_error("phase 1 unbounded");
      T p1 = objective_value(c1);
      if (p1 < -tol_) {
        res.status = LpStatus::Infeasible;
        return res;
      }
      evict_artificials();
    }
    std::vector<T> c(ncols_, T(0));
    for (std::size_t j = 0; j < n_; ++j) {
      c[j] = c_orig[j];
      c[n_ + j] = -c_orig[j];
    }
    if (!run(c, /*allow_art=*/false)) {
      res.status = LpStatus::Unbounded;
      return res;
    }
    res.status = LpStatus::Optimal;
    res.objective = objective_value(c);
    res.point.assign(n_, T(0));
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_)
        res.point[basis_[i]] += tab_[i][ncols_];
      else if (basis_[i] < 2 * n_)
        res.point[basis_[i] - n_] -= tab_[i][ncols_];
    }
    return res;
  }

  LpResult<T> feasible_point() { return maximize(std::vector<T>(n_, T(0))); }

 private:
  T objective_value(const std::vector<T>& c) const {
    T v(0);
    for (std::size_t i = 0; i < m_; ++i) v += c[basis_[i]] * tab_[i][ncols_];
    return v;
  }

  // Returns false on unboundedness.
  bool run(const std::vector<T>& c, bool allow_art) {
    for (int iter = 0; iter < 100000; ++iter) {
      // reduced costs, recomputed from scratch (sizes here are tiny)
      std::size_t enter = ncols_;
      for (std::size_t j = 0; j < ncols_; ++j) {
        if (!allow_art && j >= art_begin_) continue;
        T r = c[j];
        for (std::size_t i = 0; i < m_; ++i) r -= c[basis_[i]] * tab_[i][j];
        if (r > tol_) {
          enter = j;
          break;  // Bland: first improving column
        }
      }
      if (enter == ncols_) return true;
      std::size_t leave = m_;
      for (std::size_t i = 0; i < m_; ++i) {
        if (tab_[i][enter] <= tol_) continue;
        if (leave == m_) {
          leave = i;
          continue;
        }
        const T lhs = tab_[i][ncols_] * tab_[leave][enter];
        const T rhs = tab_[leave][ncols_] * tab_[i][enter];
        if (lhs < rhs || (lhs == rhs && basis_[i] < basis_[leave])) leave = i;
      }
      if (leave == m_) return false;
      pivot(leave, enter);
    }
    throw std::logic_error("simplex iteration cap exceeded");
  }

  void pivot(std::size_t row, std::size_t col) {
    const T piv = tab_[row][col];
    for (T& v : tab_[row]) v = v / piv;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == row) continue;
      const T f = tab_[i][col];
      if (f == T(0)) continue;
      for (std::size_t j = 0; j <= ncols_; ++j) tab_[i][j] -= f * tab_[row][j];
    }
    basis_[row] = col;
  }

  // After phase 1, pivot zero-valued basic artificials out where possible.
  void evict_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < art_begin_) continue;
      std::size_t col = ncols_;
      for (std::size_t j = 0; j < art_begin_; ++j)
        if (ArithTraits<T>::abs(tab_[i][j]) > tol_) {
          col = j;
          break;
        }
      if (col < ncols_) pivot(i, col);
      // else: redundant row, artificial stays basic at value zero
    }
  }

  std::size_t n_, m_, ncols_ = 0, art_begin_ = 0;
  T tol_;
  std::vector<std::vector<T>> tab_;
  std::vector<std::size_t> basis_;
};

// Convenience wrappers over a normalized (LessEq-only) system.
template <class T>
LpResult<T> lp_maximize(const System<T>& sys, const std::vector<T>& objective,
                        T tol = ArithTraits<T>::default_tol) {
  System<T> norm = sys.normalized();
  std::vector<std::vector<T>> A;
  std::vector<T> b;
  for (const auto& r : norm.rows) {
    A.push_back(r.coeffs);
    b.push_back(r.rhs);
  }
  if (A.empty()) A.push_back(std::vector<T>(sys.vars.size(), T(0))), b.push_back(T(0));
  Simplex<T> lp(A, b, tol);
  return lp.maximize(objective);
}

template <class T>
bool lp_feasible(const System<T>& sys, T tol = ArithTraits<T>::default_tol) {
  return lp_maximize(sys, std::vector<T>(sys.vars.size(), T(0)), tol).status ==
         LpStatus::Optimal;
}

}  // namespace zch::poly

#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "zch/poly/linear_system.hpp"
#include "zch/poly/simplex.hpp"

namespace zch::poly {

struct UnboundedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Classical Fourier-Motzkin elimination of one variable: pair every
// positive-coefficient row with every negative-coefficient row, keep
// zero-coefficient rows, drop the variable.
template <class T>
System<T> fme_eliminate(const System<T>& sys, const std::string& victim,
                        T tol = ArithTraits<T>::default_tol) {
  const int vi = sys.index_of(victim);
  System<T> norm = sys.normalized();
  System<T> out;
  for (std::size_t i = 0; i < norm.vars.size(); ++i)
    if (static_cast<int>(i) != vi) out.vars.push_back(norm.vars[i]);

  auto strip = [&](const std::vector<T>& coeffs) {
    std::vector<T> c;
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      if (static_cast<int>(i) != vi) c.push_back(coeffs[i]);
    return c;
  };

  std::vector<const Row<T>*> pos, neg;
  for (const Row<T>& r : norm.rows) {
    const T& c = r.coeffs[vi];
    if (ArithTraits<T>::abs(c) <= tol) {
      out.rows.push_back({strip(r.coeffs), r.rhs, Relation::LessEq, r.label});
    } else if (c > T(0)) {
      pos.push_back(&r);
    } else {
      neg.push_back(&r);
    }
  }
  for (const Row<T>* p : pos)
    for (const Row<T>* q : neg) {
      const T pc = p->coeffs[vi];
      const T qc = q->coeffs[vi];  // < 0
      Row<T> combo;
      combo.rel = Relation::LessEq;
      combo.rhs = p->rhs * (-qc) + q->rhs * pc;
      for (std::size_t i = 0; i < norm.vars.size(); ++i) {
        if (static_cast<int>(i) == vi) continue;
        combo.coeffs.push_back(p->coeffs[i] * (-qc) + q->coeffs[i] * pc);
      }
      if (!p->label.empty() && !q->label.empty()) combo.label = p->label + "+" + q->label;
      out.rows.push_back(std::move(combo));
    }
  return out;
}

// Drop every row that is implied by the others: maximize its left-hand side
// subject to the remaining rows and remove it when the optimum stays at or
// below its rhs.
template <class T>
System<T> remove_redundant(const System<T>& sys, T tol = ArithTraits<T>::default_tol) {
  System<T> work = sys.normalized();
  if (!lp_feasible(work, tol))
    throw InfeasibleError("cannot certify redundancy of an infeasible system");
  for (std::size_t i = 0; i < work.rows.size();) {
    System<T> others;
    others.vars = work.vars;
    for (std::size_t j = 0; j < work.rows.size(); ++j)
      if (j != i) others.rows.push_back(work.rows[j]);
    LpResult<T> r = lp_maximize(others, work.rows[i].coeffs, tol);
    const bool redundant =
        r.status == LpStatus::Optimal && r.objective <= work.rows[i].rhs + tol;
    if (redundant)
      work.rows.erase(work.rows.begin() + static_cast<std::ptrdiff_t>(i));
    else
      ++i;
  }
  return work;
}

// Unbounded iff the recession cone {d : A d <= 0} contains a nonzero ray.
// Returns such a ray if one exists.
template <class T>
std::optional<std::vector<T>> recession_direction(
    const System<T>& sys, T tol = ArithTraits<T>::default_tol) {
  System<T> cone = sys.normalized();
  const std::size_t n = cone.vars.size();
  for (auto& r : cone.rows) r.rhs = T(0);
  // box the cone so the LPs stay bounded
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<T> e(n, T(0));
    e[i] = T(1);
    cone.rows.push_back({e, T(1), Relation::LessEq, ""});
    std::vector<T> ne(n, T(0));
    ne[i] = T(-1);
    cone.rows.push_back({ne, T(1), Relation::LessEq, ""});
  }
  for (std::size_t i = 0; i < n; ++i)
    for (int sign : {1, -1}) {
      std::vector<T> obj(n, T(0));
      obj[i] = T(sign);
      LpResult<T> r = lp_maximize(cone, obj, tol);
      if (r.status == LpStatus::Optimal && r.objective > tol) return r.point;
    }
  return std::nullopt;
}

// All basic feasible solutions by active-set enumeration.  Requires a
// bounded polytope in at most 4 variables; vertices are deduplicated and
// sorted lexicographically.
template <class T>
std::vector<std::vector<T>> enumerate_vertices(const System<T>& sys,
                                               T tol = ArithTraits<T>::default_tol,
                                               double dedup_tol = 1e-9) {
  System<T> norm = sys.normalized();
  const std::size_t n = norm.vars.size();
  if (n > 4) throw std::invalid_argument("enumerate_vertices: more than 4 variables");
  if (auto ray = recession_direction(norm, tol)) {
    std::string dir;
    for (std::size_t i = 0; i < n; ++i) {
      if (!dir.empty()) dir += ", ";
      dir += norm.vars[i] + "=" + std::to_string(ArithTraits<T>::to_double((*ray)[i]));
    }
    throw UnboundedError("unbounded along recession direction (" + dir + ")");
  }
  const std::size_t m = norm.rows.size();
  std::vector<std::vector<T>> verts;
  std::vector<std::size_t> pick(n);
  auto try_subset = [&](const std::vector<std::size_t>& subset) {
    // solve the n x n active system by Gaussian elimination
    std::vector<std::vector<T>> a(n, std::vector<T>(n + 1));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) a[i][j] = norm.rows[subset[i]].coeffs[j];
      a[i][n] = norm.rows[subset[i]].rhs;
    }
    for (std::size_t col = 0; col < n; ++col) {
      std::size_t piv = col;
      for (std::size_t r = col; r < n; ++r)
        if (ArithTraits<T>::abs(a[r][col]) > ArithTraits<T>::abs(a[piv][col])) piv = r;
      if (ArithTraits<T>::abs(a[piv][col]) <= tol) return;  // singular
      std::swap(a[col], a[piv]);
      for (std::size_t r = 0; r < n; ++r) {
        if (r == col) continue;
        const T f = a[r][col] / a[col][col];
        if (f == T(0)) continue;
        for (std::size_t j = col; j <= n; ++j) a[r][j] -= f * a[col][j];
      }
    }
    std::vector<T> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = a[i][n] / a[i][i];
    for (const Row<T>& r : norm.rows) {
      T lhs(0);
      for (std::size_t j = 0; j < n; ++j) lhs += r.coeffs[j] * x[j];
      if (lhs > r.rhs + tol) return;  // infeasible intersection
    }
    verts.push_back(std::move(x));
  };
  // iterate over all n-subsets of rows (lexicographic index order, which
  // also fixes tie resolution among coincident active sets)
  std::vector<std::size_t> idx(n);
  auto rec = [&](auto&& self, std::size_t start, std::size_t depth) -> void {
    if (depth == n) {
      try_subset(idx);
      return;
    }
    for (std::size_t i = start; i + (n - depth - 1) < m; ++i) {
      idx[depth] = i;
      self(self, i + 1, depth + 1);
    }
  };
  if (n > 0 && m >= n) rec(rec, 0, 0);
  std::sort(verts.begin(), verts.end(), [](const auto& u, const auto& v) {
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (u[i] < v[i]) return true;
      if (v[i] < u[i]) return false;
    }
    return false;
  });
  std::vector<std::vector<T>> dedup;
  for (auto& v : verts) {
    bool dup = false;
    if (!dedup.empty()) {
      dup = true;
      for (std::size_t i = 0; i < n; ++i)
        if (std::abs(ArithTraits<T>::to_double(dedup.back()[i]) -
                     ArithTraits<T>::to_double(v[i])) > dedup_tol) {
          dup = false;
          break;
        }
    }
    if (!dup) dedup.push_back(std::move(v));
  }
  return dedup;
}

// Project onto `keep` by eliminating every other variable, cheapest growth
// first (fewest positive-count x negative-count pairings), then prune.
template <class T>
System<T> project(const System<T>& sys, const std::vector<std::string>& keep,
                  T tol = ArithTraits<T>::default_tol) {
  System<T> cur = sys;
  auto keeps = [&](const std::string& v) {
    return std::find(keep.begin(), keep.end(), v) != keep.end();
  };
  for (const auto& k : keep) (void)cur.index_of(k);  // validate
  while (true) {
    std::string victim;
    long best_growth = -1;
    for (std::size_t vi = 0; vi < cur.vars.size(); ++vi) {
      if (keeps(cur.vars[vi])) continue;
      long pos = 0, neg = 0;
      for (const Row<T>& r : cur.normalized().rows) {
        if (ArithTraits<T>::abs(r.coeffs[vi]) <= tol) continue;
        (r.coeffs[vi] > T(0) ? pos : neg)++;
      }
      const long growth = pos * neg;
      if (best_growth < 0 || growth < best_growth) {
        best_growth = growth;
        victim = cur.vars[vi];
      }
    }
    if (victim.empty()) break;
    cur = fme_eliminate(cur, victim, tol);
    if (cur.rows.size() > 200) cur = remove_redundant(cur, tol);
  }
  return remove_redundant(cur, tol);
}

}  // namespace zch::poly

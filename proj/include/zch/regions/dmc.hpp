#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "zch/poly/linear_system.hpp"
#include "zch/prob/info.hpp"
#include "zch/prob/joint_distribution.hpp"
#include "zch/regions/rate_region.hpp"

namespace zch::regions {

using prob::JointDistribution;
using prob::Var;
using prob::VarSet;

struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Right-hand sides of the seven split-rate inequalities, plus the binning
// lower-bound terms (reported only; they cancel inside the split bounds).
struct SplitRateBounds {
  double i15, i16, i17, i18, i19, i20, i21;
  double bin_w_s, bin_u_s, bin_u1_su, bin_u2_su;
};

inline SplitRateBounds split_rate_bounds(const JointDistribution& d) {
  auto mi = [&](VarSet a, VarSet b, VarSet c = {}) {
    return prob::conditional_mutual_information(d, a, b, c);
  };
  const VarSet S{Var::S}, W{Var::W}, U{Var::U}, U1{Var::U1}, U2{Var::U2},
      Y1{Var::Y1}, Y2{Var::Y2};
  SplitRateBounds b{};
  b.i15 = mi({Var::W, Var::U, Var::U1}, Y1) - mi({Var::W, Var::U, Var::U1}, S);
  b.i16 = mi({Var::U, Var::U1}, Y1, W) - mi({Var::U, Var::U1}, S, W);
  b.i17 = mi({Var::W, Var::U1}, Y1, U) - mi({Var::W, Var::U1}, S, U);
  b.i18 = mi(U1, Y1, {Var::W, Var::U}) - mi(U1, S, {Var::W, Var::U});
  b.i19 = mi(W, Y1, {Var::U, Var::U1}) - mi(W, S, {Var::U, Var::U1});
  b.i20 = mi({Var::U, Var::U2}, Y2) - mi({Var::U, Var::U2}, S);
  b.i21 = mi(U2, Y2, U) - mi(U2, S, U);
  b.bin_w_s = mi(W, S);
  b.bin_u_s = mi(U, S);
  b.bin_u1_su = mi(U1, S, U);
  b.bin_u2_su = mi(U2, S, U);
  return b;
}

// The five min-form constants of the single-letter region, plus the
// alternative triple-sum combination D' = (15)+(21) that the split-rate
// elimination actually produces.
struct Theorem1Bounds {
  double a, b, c, d, e;
  double d_prime;
};

inline Theorem1Bounds theorem1_bounds(const JointDistribution& dist) {
  auto mi = [&](VarSet x, VarSet y, VarSet z = {}) {
    return prob::conditional_mutual_information(dist, x, y, z);
  };
  const VarSet S{Var::S}, W{Var::W}, U{Var::U}, U1{Var::U1}, U2{Var::U2},
      Y1{Var::Y1}, Y2{Var::Y2};
  Theorem1Bounds t{};
  t.a = mi(W, Y1, {Var::U, Var::U1}) - mi(W, S, {Var::U, Var::U1});
  t.b = mi(U1, Y1, {Var::W, Var::U}) - mi(U1, S, {Var::W, Var::U}) +
        mi({Var::U, Var::U2}, Y2) - mi({Var::U, Var::U2}, S);
  t.c = mi({Var::U, Var::U1}, Y1, W) - mi({Var::U, Var::U1}, S, W) + mi(U2, Y2, U) -
        mi(U2, S, U);
  t.d = mi({Var::W, Var::U1}, Y1) - mi({Var::W, Var::U1}, S) + mi(U2, Y2, U) -
        mi(U2, S, U);
  t.e = mi({Var::W, Var::U1}, Y1, U) - mi({Var::W, Var::U1}, S, U) +
        mi({Var::U, Var::U2}, Y2) - mi({Var::U, Var::U2}, S);
  const SplitRateBounds s = split_rate_bounds(dist);
  t.d_prime = s.i15 + s.i21;
  return t;
}

enum class TripleSumVariant { LiteralD, DPrime };

inline RateRegion theorem1_region(const JointDistribution& dist,
                                  TripleSumVariant variant = TripleSumVariant::LiteralD) {
  const Theorem1Bounds t = theorem1_bounds(dist);
  const double triple = variant == TripleSumVariant::LiteralD ? std::min(t.d, t.e)
                                                              : std::min(t.d_prime, t.e);
  RateRegion r;
  r.coords = {"R11", "R21", "R22"};
  r.add_bound({1, 0, 0}, t.a, "R11<=A");
  r.add_bound({0, 1, 1}, std::min(t.b, t.c), "R21+R22<=min(B,C)");
  r.add_bound({1, 1, 1}, triple,
              variant == TripleSumVariant::LiteralD ? "R11+R21+R22<=min(D,E)"
                                                    : "R11+R21+R22<=min(D',E)");
  return r;
}

// Split-rate system over (R11, R21c, R21p, R22c, R22p, R21, R22): the seven
// inequalities, the two coupling equalities (as inequality pairs), and
// nonnegativity of the five split rates.
inline poly::System<double> split_rate_system(const JointDistribution& dist) {
  const SplitRateBounds b = split_rate_bounds(dist);
  poly::System<double> sys;
  sys.vars = {"R11", "R21c", "R21p", "R22c", "R22p", "R21", "R22"};
  //            R11  R21c R21p R22c R22p R21  R22
  sys.add_row({1, 1, 1, 1, 0, 0, 0}, b.i15, poly::Relation::LessEq, "(15)");
  sys.add_row({0, 1, 1, 1, 0, 0, 0}, b.i16, poly::Relation::LessEq, "(16)");
  sys.add_row({1, 0, 1, 0, 0, 0, 0}, b.i17, poly::Relation::LessEq, "(17)");
  sys.add_row({0, 0, 1, 0, 0, 0, 0}, b.i18, poly::Relation::LessEq, "(18)");
  sys.add_row({1, 0, 0, 0, 0, 0, 0}, b.i19, poly::Relation::LessEq, "(19)");
  sys.add_row({0, 1, 0, 1, 1, 0, 0}, b.i20, poly::Relation::LessEq, "(20)");
  sys.add_row({0, 0, 0, 0, 1, 0, 0}, b.i21, poly::Relation::LessEq, "(21)");
  // R21 = R21c + R21p, R22 = R22c + R22p
  sys.add_row({0, 1, 1, 0, 0, -1, 0}, 0.0, poly::Relation::LessEq, "R21-split");
  sys.add_row({0, -1, -1, 0, 0, 1, 0}, 0.0, poly::Relation::LessEq, "R21-split");
  sys.add_row({0, 0, 0, 1, 1, 0, -1}, 0.0, poly::Relation::LessEq, "R22-split");
  sys.add_row({0, 0, 0, -1, -1, 0, 1}, 0.0, poly::Relation::LessEq, "R22-split");
  const char* names[] = {"R11", "R21c", "R21p", "R22c", "R22p"};
  for (int i = 0; i < 5; ++i) {
    std::vector<double> c(7, 0.0);
    c[i] = -1.0;
    sys.add_row(std::move(c), 0.0, poly::Relation::LessEq,
                std::string(names[i]) + ">=0");
  }
  return sys;
}

// --- degraded-channel helpers -------------------------------------------

// Residual of the degraded factorization
// p(y1,y2|x1,x2,s) = p(y2|x2,s) p(y1|x1,y2,s); test generators use this.
inline double degraded_channel_residual(const JointDistribution& d) {
  const int nS = d.size(Var::S), nX1 = d.size(Var::X1), nX2 = d.size(Var::X2),
            nY1 = d.size(Var::Y1), nY2 = d.size(Var::Y2);
  const auto p_in = d.marginal({Var::S, Var::X1, Var::X2});
  const auto p_full = d.marginal({Var::S, Var::X1, Var::X2, Var::Y1, Var::Y2});
  const auto p_x2s = d.marginal({Var::S, Var::X2});
  const auto p_y2x2s = d.marginal({Var::S, Var::X2, Var::Y2});
  const auto p_x1y2s = d.marginal({Var::S, Var::X1, Var::Y2});
  const auto p_y1x1y2s = d.marginal({Var::S, Var::X1, Var::Y1, Var::Y2});
  auto cond = [](double num, double den) { return den > 0.0 ? num / den : 0.0; };
  double resid = 0.0;
  for (int s = 0; s < nS; ++s)
    for (int x1 = 0; x1 < nX1; ++x1)
      for (int x2 = 0; x2 < nX2; ++x2) {
        const double pin = p_in[(s * nX1 + x1) * nX2 + x2];
        if (pin <= 0.0) continue;
        for (int y1 = 0; y1 < nY1; ++y1)
          for (int y2 = 0; y2 < nY2; ++y2) {
            const double lhs =
                p_full[((s * nX1 + x1) * nX2 + x2) * nY1 * nY2 + y1 * nY2 + y2] / pin;
            const double py2 = cond(p_y2x2s[(s * nX2 + x2) * nY2 + y2],
                                    p_x2s[s * nX2 + x2]);
            const double py1 =
                cond(p_y1x1y2s[(s * nX1 + x1) * nY1 * nY2 + y1 * nY2 + y2],
                     p_x1y2s[(s * nX1 + x1) * nY2 + y2]);
            resid = std::max(resid, std::abs(lhs - py2 * py1));
          }
      }
  return resid;
}

// p(u1|u,s) must be the identity map wherever (u,s) has mass.
inline bool has_identity_u1(const JointDistribution& d, double tol = 1e-9) {
  if (d.size(Var::U1) != d.size(Var::U)) return false;
  const int nU = d.size(Var::U), nU1 = d.size(Var::U1);
  const auto p_us = d.marginal({Var::S, Var::U});
  const auto p_uu1s = d.marginal({Var::S, Var::U, Var::U1});
  for (int s = 0; s < d.size(Var::S); ++s)
    for (int u = 0; u < nU; ++u) {
      const double den = p_us[s * nU + u];
      if (den <= 0.0) continue;
      for (int u1 = 0; u1 < nU1; ++u1) {
        const double c = p_uu1s[(s * nU + u) * nU1 + u1] / den;
        if (std::abs(c - (u1 == u ? 1.0 : 0.0)) > tol) return false;
      }
    }
  return true;
}

// Inner bound for the degraded channel; requires the structural U1 = U
// substitution.
inline RateRegion theorem2_region(const JointDistribution& dist) {
  if (!has_identity_u1(dist))
    throw PreconditionError("theorem2_region requires U1 identical to U");
  auto mi = [&](VarSet x, VarSet y, VarSet z = {}) {
    return prob::conditional_mutual_information(dist, x, y, z);
  };
  const VarSet S{Var::S}, W{Var::W}, U{Var::U}, U2{Var::U2}, Y1{Var::Y1}, Y2{Var::Y2};
  RateRegion r;
  r.coords = {"R11", "R21", "R22"};
  r.add_bound({1, 1, 0}, mi({Var::U, Var::W}, Y1) - mi({Var::U, Var::W}, S), "(27)");
  r.add_bound({0, 1, 0}, mi(U, Y1, W) - mi(U, S, W), "(28)");
  r.add_bound({1, 0, 0}, mi(W, Y1, U) - mi(W, S, U), "(29)");
  r.add_bound({0, 1, 1}, mi({Var::U, Var::U2}, Y2) - mi({Var::U, Var::U2}, S), "(30)");
  r.add_bound({0, 0, 1}, mi(U2, Y2, U) - mi(U2, S, U), "(31)");
  return r;
}

// Outer bound for the degraded channel (U1 unused).
inline RateRegion theorem3_outer(const JointDistribution& dist) {
  auto mi = [&](VarSet x, VarSet y, VarSet z = {}) {
    return prob::conditional_mutual_information(dist, x, y, z);
  };
  const VarSet S{Var::S}, W{Var::W}, U{Var::U}, U2{Var::U2}, Y1{Var::Y1}, Y2{Var::Y2};
  RateRegion r;
  r.coords = {"R11", "R21", "R22"};
  r.add_bound({1, 1, 0}, mi({Var::U, Var::W}, Y1) - mi(W, S), "(32)");
  r.add_bound({0, 1, 0}, mi(U, Y1, {Var::W, Var::S}), "(33)");
  r.add_bound({0, 1, 1}, mi({Var::U, Var::U2}, Y2) - mi({Var::U, Var::U2}, S), "(34)");
  r.add_bound({0, 0, 1}, mi(U2, Y2, U) - mi(U2, S, U), "(35)");
  return r;
}

// Multiple-access reduction: W plays the first user's auxiliary, U1 the
// second user's; U and U2 must be degenerate.
inline RateRegion mac_reduction(const JointDistribution& dist) {
  if (dist.size(Var::U) != 1 || dist.size(Var::U2) != 1)
    throw PreconditionError("mac_reduction requires degenerate U and U2");
  auto mi = [&](VarSet x, VarSet y, VarSet z = {}) {
    return prob::conditional_mutual_information(dist, x, y, z);
  };
  const VarSet S{Var::S}, W{Var::W}, U1{Var::U1}, Y1{Var::Y1};
  RateRegion r;
  r.coords = {"R1", "R2"};
  r.add_bound({1, 0}, mi(W, Y1, U1) - mi(W, S, U1), "(22)");
  r.add_bound({0, 1}, mi(U1, Y1, W) - mi(U1, S, W), "(23)");
  r.add_bound({1, 1}, mi({Var::W, Var::U1}, Y1) - mi({Var::W, Var::U1}, S), "(24)");
  return r;
}

// Degraded-broadcast reduction: W and U2 must be degenerate.
inline RateRegion bc_reduction(const JointDistribution& dist) {
  if (dist.size(Var::W) != 1 || dist.size(Var::U2) != 1)
    throw PreconditionError("bc_reduction requires degenerate W and U2");
  auto mi = [&](VarSet x, VarSet y, VarSet z = {}) {
    return prob::conditional_mutual_information(dist, x, y, z);
  };
  const VarSet S{Var::S}, U{Var::U}, U1{Var::U1}, Y1{Var::Y1}, Y2{Var::Y2};
  RateRegion r;
  r.coords = {"R1", "R2"};
  r.add_bound({1, 0}, mi(U1, Y1, U) - mi(U1, S, U), "(25)");
  r.add_bound({0, 1}, mi(U, Y2) - mi(U, S), "(26)");
  return r;
}

}  // namespace zch::regions

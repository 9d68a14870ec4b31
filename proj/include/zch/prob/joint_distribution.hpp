#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "zch/prob/variables.hpp"

namespace zch::prob {

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Dense joint probability tensor over (S, W, X1, U, U1, U2, X2, Y1, Y2).
//
// The tensor must factor as
//   p(s) p(w|s) p(x1|w,s) p(u|s) p(u1|u,s) p(u2|u,s) p(x2|u,u1,u2,s) p(y1,y2|x1,x2,s)
// with the channel-input conditionals p(x1|w,s) and p(x2|u,u1,u2,s)
// deterministic (0/1 valued).
class JointDistribution {
 public:
  JointDistribution(std::array<int, kNumVars> sizes, std::vector<double> probs,
                    double tolerance = 1e-9)
      : sizes_(sizes), probs_(std::move(probs)), tolerance_(tolerance) {
    std::size_t total = 1;
    for (int i = kNumVars - 1; i >= 0; --i) {
      if (sizes_[i] < 1) throw ValidationError("alphabet size must be positive");
      strides_[i] = total;
      total *= static_cast<std::size_t>(sizes_[i]);
    }
    if (probs_.size() != total)
      throw ValidationError("tensor size does not match alphabet sizes");
    validate();
  }

  int size(Var v) const { return sizes_[static_cast<int>(v)]; }
  const std::array<int, kNumVars>& sizes() const { return sizes_; }
  double tolerance() const { return tolerance_; }
  const std::vector<double>& tensor() const { return probs_; }

  double at(const std::array<int, kNumVars>& idx) const {
    return probs_[flat_index(idx)];
  }

  std::size_t flat_index(const std::array<int, kNumVars>& idx) const {
    std::size_t f = 0;
    for (int i = 0; i < kNumVars; ++i) f += strides_[i] * static_cast<std::size_t>(idx[i]);
    return f;
  }

  // Iterate over all index tuples; f(idx, p).
  template <class F>
  void for_each(F&& f) const {
    std::array<int, kNumVars> idx{};
    for (std::size_t flat = 0; flat < probs_.size(); ++flat) {
      f(idx, probs_[flat]);
      for (int i = kNumVars - 1; i >= 0; --i) {
        if (++idx[i] < sizes_[i]) break;
        idx[i] = 0;
      }
    }
  }

  // Marginal over `vars`, dense over the reduced index space (canonical
  // variable order preserved).
  std::vector<double> marginal(VarSet vars) const {
    std::vector<Var> kept = vars.members();
    std::size_t msize = 1;
    for (Var v : kept) msize *= static_cast<std::size_t>(size(v));
    std::vector<double> out(msize, 0.0);
    for_each([&](const std::array<int, kNumVars>& idx, double p) {
      std::size_t f = 0;
      for (Var v : kept) f = f * static_cast<std::size_t>(size(v)) + idx[static_cast<int>(v)];
      out[f] += p;
    });
    return out;
  }

 private:
  void validate() const {
    double sum = 0.0;
    for (double p : probs_) {
      if (!(p >= -tolerance_)) throw ValidationError("negative tensor entry");
      sum += p;
    }
    if (std::abs(sum - 1.0) > tolerance_)
      throw ValidationError("tensor mass " + std::to_string(sum));
    check_factorization();
    check_determinism();
  }

  // Reconstruct the Eq-style factorization from the tensor's own
  // conditionals and compare entrywise.
  void check_factorization() const {
    auto m = [&](VarSet s) { return marginal(s); };
    const auto p_s = m({Var::S});
    const auto p_ws = m({Var::S, Var::W});
    const auto p_wx1s = m({Var::S, Var::W, Var::X1});
    const auto p_us = m({Var::S, Var::U});
    const auto p_uu1s = m({Var::S, Var::U, Var::U1});
    const auto p_uu2s = m({Var::S, Var::U, Var::U2});
    const auto p_enc2 = m({Var::S, Var::U, Var::U1, Var::U2});
    const auto p_enc2x = m({Var::S, Var::U, Var::U1, Var::U2, Var::X2});
    const auto p_chin = m({Var::S, Var::X1, Var::X2});
    const auto p_chout = m({Var::S, Var::X1, Var::X2, Var::Y1, Var::Y2});

    const int nS = size(Var::S), nW = size(Var::W), nX1 = size(Var::X1);
    const int nU = size(Var::U), nU1 = size(Var::U1), nU2 = size(Var::U2);
    const int nX2 = size(Var::X2), nY2 = size(Var::Y2);

    double max_resid = 0.0;
    for_each([&](const std::array<int, kNumVars>& idx, double p) {
      const int s = idx[0], w = idx[1], x1 = idx[2], u = idx[3], u1 = idx[4],
                u2 = idx[5], x2 = idx[6], y1 = idx[7], y2 = idx[8];
      auto cond = [](double joint, double denom) {
        return denom > 0.0 ? joint / denom : 0.0;
      };
      const double ps = p_s[s];
      const double f1 = cond(p_ws[s * nW + w], ps);
      const double f2 = cond(p_wx1s[(s * nW + w) * nX1 + x1], p_ws[s * nW + w]);
      const double f3 = cond(p_us[s * nU + u], ps);
      const double f4 = cond(p_uu1s[(s * nU + u) * nU1 + u1], p_us[s * nU + u]);
      const double f5 = cond(p_uu2s[(s * nU + u) * nU2 + u2], p_us[s * nU + u]);
      const double f6 = cond(p_enc2x[(((s * nU + u) * nU1 + u1) * nU2 + u2) * nX2 + x2],
                             p_enc2[((s * nU + u) * nU1 + u1) * nU2 + u2]);
      const double f7 =
          cond(p_chout[(((s * nX1 + x1) * nX2 + x2) * size(Var::Y1) + y1) * nY2 + y2],
               p_chin[(s * nX1 + x1) * nX2 + x2]);
      const double recon = ps * f1 * f2 * f3 * f4 * f5 * f6 * f7;
      max_resid = std::max(max_resid, std::abs(recon - p));
    });
    if (max_resid > tolerance_)
      throw ValidationError("factorization residual " + std::to_string(max_resid));
  }

  // p(x1|w,s) and p(x2|u,u1,u2,s) must be 0/1 wherever the conditioning
  // event has mass.
  void check_determinism() const {
    const int nW = size(Var::W), nX1 = size(Var::X1);
    const int nU = size(Var::U), nU1 = size(Var::U1), nU2 = size(Var::U2),
              nX2 = size(Var::X2);
    const auto p_ws = marginal({Var::S, Var::W});
    const auto p_wx1s = marginal({Var::S, Var::W, Var::X1});
    for (int s = 0; s < size(Var::S); ++s)
      for (int w = 0; w < nW; ++w) {
        const double denom = p_ws[s * nW + w];
        if (denom <= 0.0) continue;
        for (int x1 = 0; x1 < nX1; ++x1) {
          const double c = p_wx1s[(s * nW + w) * nX1 + x1] / denom;
          if (c > tolerance_ && c < 1.0 - tolerance_)
            throw ValidationError("p(x1|w,s) not deterministic");
        }
      }
    const auto p_e = marginal({Var::S, Var::U, Var::U1, Var::U2});
    const auto p_ex = marginal({Var::S, Var::U, Var::U1, Var::U2, Var::X2});
    for (int s = 0; s < size(Var::S); ++s)
      for (int u = 0; u < nU; ++u)
        for (int u1 = 0; u1 < nU1; ++u1)
          for (int u2 = 0; u2 < nU2; ++u2) {
            const double denom = p_e[((s * nU + u) * nU1 + u1) * nU2 + u2];
            if (denom <= 0.0) continue;
            for (int x2 = 0; x2 < nX2; ++x2) {
              const double c =
                  p_ex[(((s * nU + u) * nU1 + u1) * nU2 + u2) * nX2 + x2] / denom;
              if (c > tolerance_ && c < 1.0 - tolerance_)
                throw ValidationError("p(x2|u,u1,u2,s) not deterministic");
            }
          }
  }

  std::array<int, kNumVars> sizes_;
  std::array<std::size_t, kNumVars> strides_;
  std::vector<double> probs_;
  double tolerance_;
};

}  // namespace zch::prob

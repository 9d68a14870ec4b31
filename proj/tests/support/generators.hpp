#pragma once

// Test-side distribution generators and an independent mutual-information
// oracle (direct summation, no entropy decomposition).

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "zch/prob/random.hpp"

namespace testsup {

using zch::prob::Factors;
using zch::prob::JointDistribution;
using zch::prob::kNumVars;
using zch::prob::Var;
using zch::prob::VarSet;

// I(a;b|c) = sum p(abc) log2( p(abc) p(c) / (p(ac) p(bc)) ), summed directly.
inline double oracle_cmi(const JointDistribution& d, VarSet a, VarSet b,
                         VarSet c = {}) {
  const auto p_abc = d.marginal(a | b | c);
  const auto p_ac = d.marginal(a | c);
  const auto p_bc = d.marginal(b | c);
  const std::vector<double> p_c = c.empty() ? std::vector<double>{1.0}
                                            : d.marginal(c);
  auto project = [&](const std::array<int, kNumVars>& idx, VarSet vars) {
    std::size_t f = 0;
    for (Var v : vars.members())
      f = f * static_cast<std::size_t>(d.size(v)) + idx[static_cast<int>(v)];
    return f;
  };
  double mi = 0.0;
  // iterate over the joint support of (a,b,c) through the full tensor once
  std::vector<bool> seen(p_abc.size(), false);
  d.for_each([&](const std::array<int, kNumVars>& idx, double) {
    const std::size_t f = project(idx, a | b | c);
    if (seen[f]) return;
    seen[f] = true;
    const double pabc = p_abc[f];
    if (pabc <= 0.0) return;
    const double pc = c.empty() ? 1.0 : p_c[project(idx, c)];
    const double pac = p_ac[project(idx, a | c)];
    const double pbc = p_bc[project(idx, b | c)];
    mi += pabc * std::log2(pabc * pc / (pac * pbc));
  });
  return mi;
}

// Random binary-alphabet instance biased toward informative channels: the
// outputs are near-deterministic in (x1, x2) and the state influence on the
// auxiliaries is damped, so the seven split-rate bounds are usually all
// nonnegative.
inline Factors informative_factors(std::uint64_t seed, double state_mix = 0.3,
                                   double chan_noise = 0.02) {
  std::array<int, kNumVars> sizes;
  sizes.fill(2);
  sizes[7] = 4;  // Y1 resolves the (x1, x2) pair
  Factors f = zch::prob::random_factors(seed, sizes);
  auto damp = [&](std::vector<double>& p, int ns, int rest) {
    for (int r = 0; r < rest; ++r) {
      double mean = 0;
      for (int s = 0; s < ns; ++s) mean += p[s * rest + r];
      mean /= ns;
      for (int s = 0; s < ns; ++s)
        p[s * rest + r] = state_mix * p[s * rest + r] + (1 - state_mix) * mean;
    }
  };
  auto renorm = [](std::vector<double>& p, int n) {
    for (std::size_t b = 0; b + n <= p.size(); b += n) {
      double s = 0;
      for (int i = 0; i < n; ++i) s += p[b + i];
      for (int i = 0; i < n; ++i) p[b + i] /= s;
    }
  };
  damp(f.p_w_s, 2, 2);
  damp(f.p_u_s, 2, 2);
  damp(f.p_u1_us, 2, 4);
  damp(f.p_u2_us, 2, 4);
  renorm(f.p_w_s, 2);
  renorm(f.p_u_s, 2);
  renorm(f.p_u1_us, 2);
  renorm(f.p_u2_us, 2);
  for (int s = 0; s < 2; ++s)
    for (int w = 0; w < 2; ++w) f.x1_map[s * 2 + w] = w;
  for (int s = 0; s < 2; ++s)
    for (int u = 0; u < 2; ++u)
      for (int u1 = 0; u1 < 2; ++u1)
        for (int u2 = 0; u2 < 2; ++u2)
          f.x2_map[((s * 2 + u) * 2 + u1) * 2 + u2] = u ^ u1 ^ u2;
  f.p_y_x1x2s.assign(2 * 2 * 2 * 4 * 2, 0.0);
  for (int s = 0; s < 2; ++s)
    for (int x1 = 0; x1 < 2; ++x1)
      for (int x2 = 0; x2 < 2; ++x2) {
        const int base = ((s * 2 + x1) * 2 + x2) * 8;
        const int y1_true = x1 * 2 + x2;
        for (int y1 = 0; y1 < 4; ++y1)
          for (int y2 = 0; y2 < 2; ++y2) {
            const double p1 = y1 == y1_true ? 1.0 - 3 * chan_noise : chan_noise;
            const double p2 = y2 == x2 ? 1.0 - 4 * chan_noise : 4 * chan_noise;
            f.p_y_x1x2s[base + y1 * 2 + y2] = p1 * p2;
          }
      }
  return f;
}

// Force p(u1|u,s) to the identity map (the structural U1 = U substitution).
inline Factors with_identity_u1(Factors f) {
  const int nS = f.sizes[0], nU = f.sizes[3];
  f.sizes[4] = nU;
  f.p_u1_us.assign(static_cast<std::size_t>(nS) * nU * nU, 0.0);
  for (int s = 0; s < nS; ++s)
    for (int u = 0; u < nU; ++u) f.p_u1_us[(s * nU + u) * nU + u] = 1.0;
  // x2 map must be re-sized to the new U1 alphabet
  f.x2_map.resize(static_cast<std::size_t>(nS) * nU * nU * f.sizes[5]);
  std::mt19937_64 rng(0x1d);
  std::uniform_int_distribution<int> pick(0, f.sizes[6] - 1);
  for (int& m : f.x2_map) m = pick(rng);
  return f;
}

inline JointDistribution identity_u1_dist(std::uint64_t seed) {
  return with_identity_u1(informative_factors(seed)).build();
}

// Degenerate U and U2 (the multiple-access substitution).
inline JointDistribution mac_dist(std::uint64_t seed) {
  std::array<int, kNumVars> sizes = {2, 2, 2, 1, 2, 1, 2, 4, 2};
  return zch::prob::random_joint_distribution(seed, sizes);
}

// Degenerate W and U2 (the broadcast substitution).
inline JointDistribution bc_dist(std::uint64_t seed) {
  std::array<int, kNumVars> sizes = {2, 1, 2, 2, 2, 1, 2, 4, 2};
  return zch::prob::random_joint_distribution(seed, sizes);
}

// Random degraded channel: p(y1,y2|x1,x2,s) = p(y2|x2,s) p(y1|x1,y2,s).
inline Factors degraded_factors(std::uint64_t seed) {
  Factors f = informative_factors(seed);
  const int nS = 2, nX1 = 2, nX2 = 2, nY1 = 4, nY2 = 2;
  std::mt19937_64 rng(seed ^ 0x5eed);
  auto simplex = [&](int n, std::vector<double>& out) {
    std::exponential_distribution<double> e(1.0);
    double sum = 0;
    out.resize(n);
    for (double& x : out) sum += (x = e(rng));
    for (double& x : out) x /= sum;
  };
  std::vector<double> p_y2(nS * nX2 * nY2), p_y1(nS * nX1 * nY2 * nY1);
  for (int i = 0; i < nS * nX2; ++i) {
    std::vector<double> row;
    simplex(nY2, row);
    for (int y2 = 0; y2 < nY2; ++y2) p_y2[i * nY2 + y2] = row[y2];
  }
  for (int i = 0; i < nS * nX1 * nY2; ++i) {
    std::vector<double> row;
    simplex(nY1, row);
    for (int y1 = 0; y1 < nY1; ++y1) p_y1[i * nY1 + y1] = row[y1];
  }
  for (int s = 0; s < nS; ++s)
    for (int x1 = 0; x1 < nX1; ++x1)
      for (int x2 = 0; x2 < nX2; ++x2)
        for (int y1 = 0; y1 < nY1; ++y1)
          for (int y2 = 0; y2 < nY2; ++y2)
            f.p_y_x1x2s[((s * nX1 + x1) * nX2 + x2) * (nY1 * nY2) + y1 * nY2 + y2] =
                p_y2[(s * nX2 + x2) * nY2 + y2] *
                p_y1[((s * nX1 + x1) * nY2 + y2) * nY1 + y1];
  return f;
}

}  // namespace testsup

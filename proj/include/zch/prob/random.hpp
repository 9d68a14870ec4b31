#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "zch/prob/joint_distribution.hpp"
#include "zch/prob/variables.hpp"

namespace zch::prob {

// The conditional factors of the channel-model factorization.  Index
// layout: conditioning variables first (canonical order), target last.
struct Factors {
  std::array<int, kNumVars> sizes{};
  std::vector<double> p_s;        // [s]
  std::vector<double> p_w_s;      // [s][w]
  std::vector<int> x1_map;        // [s][w] -> x1 (deterministic)
  std::vector<double> p_u_s;      // [s][u]
  std::vector<double> p_u1_us;    // [s][u][u1]
  std::vector<double> p_u2_us;    // [s][u][u2]
  std::vector<int> x2_map;        // [s][u][u1][u2] -> x2 (deterministic)
  std::vector<double> p_y_x1x2s;  // [s][x1][x2][y1][y2]

  JointDistribution build(double tolerance = 1e-9) const {
    const int nS = sizes[0], nW = sizes[1], nX1 = sizes[2], nU = sizes[3],
              nU1 = sizes[4], nU2 = sizes[5], nX2 = sizes[6], nY1 = sizes[7],
              nY2 = sizes[8];
    std::size_t total = 1;
    for (int n : sizes) total *= static_cast<std::size_t>(n);
    std::vector<double> tensor(total, 0.0);
    std::size_t flat = 0;
    for (int s = 0; s < nS; ++s)
      for (int w = 0; w < nW; ++w)
        for (int x1 = 0; x1 < nX1; ++x1)
          for (int u = 0; u < nU; ++u)
            for (int u1 = 0; u1 < nU1; ++u1)
              for (int u2 = 0; u2 < nU2; ++u2)
                for (int x2 = 0; x2 < nX2; ++x2)
                  for (int y1 = 0; y1 < nY1; ++y1)
                    for (int y2 = 0; y2 < nY2; ++y2, ++flat) {
                      if (x1 != x1_map[s * nW + w]) continue;
                      if (x2 != x2_map[((s * nU + u) * nU1 + u1) * nU2 + u2]) continue;
                      tensor[flat] =
                          p_s[s] * p_w_s[s * nW + w] * p_u_s[s * nU + u] *
                          p_u1_us[(s * nU + u) * nU1 + u1] *
                          p_u2_us[(s * nU + u) * nU2 + u2] *
                          p_y_x1x2s[((s * nX1 + x1) * nX2 + x2) * (nY1 * nY2) +
                                    y1 * nY2 + y2];
                    }
    return JointDistribution(sizes, std::move(tensor), tolerance);
  }
};

namespace detail {

// Uniform simplex sample via normalized exponentials.
template <class Rng>
std::vector<double> simplex(Rng& rng, int n) {
  std::exponential_distribution<double> exp1(1.0);
  std::vector<double> v(n);
  double sum = 0.0;
  for (double& x : v) sum += (x = exp1(rng));
  for (double& x : v) x /= sum;
  return v;
}

}  // namespace detail

// Random instance of the factorization; identical seed gives identical output.
inline Factors random_factors(std::uint64_t seed, std::array<int, kNumVars> sizes) {
  for (int n : sizes) {
    if (n < 1 || n > 4)
      throw std::invalid_argument("alphabet sizes must lie in [1,4]");
  }
  std::mt19937_64 rng(seed);
  const int nS = sizes[0], nW = sizes[1], nX1 = sizes[2], nU = sizes[3],
            nU1 = sizes[4], nU2 = sizes[5], nX2 = sizes[6], nY1 = sizes[7],
            nY2 = sizes[8];
  Factors f;
  f.sizes = sizes;
  auto fill = [&](std::vector<double>& out, int blocks, int n) {
    out.clear();
    for (int b = 0; b < blocks; ++b) {
      auto v = detail::simplex(rng, n);
      out.insert(out.end(), v.begin(), v.end());
    }
  };
  fill(f.p_s, 1, nS);
  fill(f.p_w_s, nS, nW);
  fill(f.p_u_s, nS, nU);
  fill(f.p_u1_us, nS * nU, nU1);
  fill(f.p_u2_us, nS * nU, nU2);
  fill(f.p_y_x1x2s, nS * nX1 * nX2, nY1 * nY2);
  std::uniform_int_distribution<int> pick_x1(0, nX1 - 1), pick_x2(0, nX2 - 1);
  f.x1_map.resize(static_cast<std::size_t>(nS) * nW);
  for (int& m : f.x1_map) m = pick_x1(rng);
  f.x2_map.resize(static_cast<std::size_t>(nS) * nU * nU1 * nU2);
  for (int& m : f.x2_map) m = pick_x2(rng);
  return f;
}

inline JointDistribution random_joint_distribution(std::uint64_t seed,
                                                   std::array<int, kNumVars> sizes,
                                                   double tolerance = 1e-9) {
  return random_factors(seed, sizes).build(tolerance);
}

}  // namespace zch::prob

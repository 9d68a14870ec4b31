#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace zch::lattice {

// Shaping gap of the scalar lattice (G = 1/12) against an asymptotically
// good lattice (G -> 1/(2 pi e)): 1/2 log2(2 pi e / 12) bits per use.
inline double scalar_shaping_gap_bits() {
  return 0.5 * std::log2(2.0 * std::acos(-1.0) * std::exp(1.0) / 12.0);
}

// Scalar mod-lattice reduction into the half-open cell [-delta/2, delta/2);
// ties at +delta/2 map to the negative edge.
inline double mod_lattice(double x, double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("mod_lattice: delta must be > 0");
  double r = x - delta * std::round(x / delta);
  if (r >= delta / 2.0) r -= delta;
  if (r < -delta / 2.0) r += delta;
  return r;
}

struct LatticeConfig {
  double p1 = 1.0, p2 = 2.0;
  double n1 = 1.0, n2 = 1.0;
  double q = 1.0;
  double a = 10.0;    // crossover gain
  double rho = 0.5;   // power split, rho_bar = 1 - rho
  double alpha0 = 0.5, alpha1 = 0.5, alpha2 = 0.5;
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 0;

  double rho_bar() const { return 1.0 - rho; }
  // second moments of the three scalar lattices
  double sigma0_sq() const { return rho * p2; }
  double sigma1_sq() const { return p1; }
  double sigma2_sq() const { return rho_bar() * p2; }
  // scalar lattice steps: delta^2 / 12 = sigma^2
  double delta0() const { return std::sqrt(12.0 * sigma0_sq()); }
  double delta1() const { return std::sqrt(12.0 * sigma1_sq()); }
  double delta2() const { return std::sqrt(12.0 * sigma2_sq()); }

  void validate() const {
    if (p1 < 0 || p2 < 0 || n1 < 0 || n2 < 0 || q < 0)
      throw std::invalid_argument("negative power or variance");
    if (rho < 0.0 || rho > 1.0) throw std::invalid_argument("rho must lie in [0,1]");
    for (double al : {alpha0, alpha1, alpha2})
      if (al < 0.0 || al > 1.0) throw std::invalid_argument("alpha out of [0,1]");
  }
};

struct Theorem5Bounds {
  double a1_bound;    // common-rate bound through decoder 1
  double a2_bound;    // common-rate bound through decoder 2
  double r11_bound;
  double r22_bound;
  double r21() const { return std::min(a1_bound, a2_bound); }
};

inline double clamped_half_log2(double num, double den) {
  if (!(den > 0.0) || !(num > 0.0)) return 0.0;
  return std::max(0.0, 0.5 * std::log2(num / den));
}

// Rate bounds at the configured MMSE scalings; degenerate power splits
// clamp to zero rate instead of producing -inf logs.
inline Theorem5Bounds theorem5_bounds(const LatticeConfig& c) {
  c.validate();
  const double rb = c.rho_bar();
  const double ab0 = 1.0 - c.alpha0, ab1 = 1.0 - c.alpha1, ab2 = 1.0 - c.alpha2;
  Theorem5Bounds b{};
  b.a1_bound = clamped_half_log2(
      c.a * c.a * c.rho * c.p2,
      ab0 * ab0 * c.a * c.a * c.rho * c.p2 +
          c.alpha0 * c.alpha0 * (c.a * c.a * rb * c.p2 + c.n1));
  b.a2_bound = clamped_half_log2(
      c.rho * c.p2,
      ab0 * ab0 * c.rho * c.p2 + c.alpha0 * c.alpha0 * (rb * c.p2 + c.n2));
  b.r11_bound = clamped_half_log2(
      c.p1, ab1 * ab1 * c.p1 + c.alpha1 * c.alpha1 * (c.a * c.a * rb * c.p2 + c.n1));
  b.r22_bound = clamped_half_log2(
      rb * c.p2, ab2 * ab2 * rb * c.p2 + c.alpha2 * c.alpha2 * c.n2);
  return b;
}

struct OptimalAlphas {
  double alpha0_opt1;  // from the first receiver standpoint
  double alpha0_opt2;  // from the second receiver standpoint
  double alpha1_opt;
  double alpha2_opt;
};

inline OptimalAlphas optimal_alphas(const LatticeConfig& c) {
  const double rb = c.rho_bar();
  OptimalAlphas o{};
  o.alpha0_opt1 = c.a * c.a * c.rho * c.p2 / (c.a * c.a * c.p2 + c.n1);
  o.alpha0_opt2 = c.rho * c.p2 / (c.p2 + c.n2);
  o.alpha1_opt = c.p1 / (c.p1 + c.a * c.a * rb * c.p2 + c.n1);
  o.alpha2_opt = rb * c.p2 / (rb * c.p2 + c.n2);
  return o;
}

struct RateTriple {
  double rho, alpha0;
  double r21, r11, r22;
};

struct LatticeRegion {
  std::vector<RateTriple> cloud;
  std::vector<RateTriple> frontier;  // coordinatewise non-dominated corners
};

// Union over the (rho, alpha0) grid with alpha1 and alpha2 at their
// closed-form optima.
inline LatticeRegion region_union(LatticeConfig cfg, const std::vector<double>& rho_grid,
                                  const std::vector<double>& alpha0_grid) {
  LatticeRegion out;
  for (double rho : rho_grid) {
    for (double a0 : alpha0_grid) {
      if (rho < 0 || rho > 1 || a0 < 0 || a0 > 1)
        throw std::invalid_argument("grid point outside [0,1]");
      LatticeConfig c = cfg;
      c.rho = rho;
      c.alpha0 = a0;
      const OptimalAlphas opt = optimal_alphas(c);
      c.alpha1 = opt.alpha1_opt;
      c.alpha2 = opt.alpha2_opt;
      const Theorem5Bounds b = theorem5_bounds(c);
      out.cloud.push_back({rho, a0, b.r21(), b.r11_bound, b.r22_bound});
    }
  }
  for (const RateTriple& v : out.cloud) {
    bool dominated = false;
    for (const RateTriple& w : out.cloud) {
      const bool geq = w.r21 >= v.r21 - 1e-12 && w.r11 >= v.r11 - 1e-12 &&
                       w.r22 >= v.r22 - 1e-12;
      const bool strict = w.r21 > v.r21 + 1e-12 || w.r11 > v.r11 + 1e-12 ||
                          w.r22 > v.r22 + 1e-12;
      if (geq && strict) {
        dominated = true;
        break;
      }
    }
    if (!dominated) out.frontier.push_back(v);
  }
  return out;
}

}  // namespace zch::lattice

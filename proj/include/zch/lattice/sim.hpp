#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <future>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "zch/lattice/lattice.hpp"
#include "zch/lattice/rng.hpp"

namespace zch::lattice {

struct StatCheck {
  std::string name;
  double predicted = 0.0;
  double empirical = 0.0;
  double ratio() const { return predicted != 0.0 ? empirical / predicted : 1.0; }
};

struct LatticeRunStats {
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::vector<StatCheck> variance_checks;
  double corr_u_s = 0.0;
  double corr_z02e_s = 0.0;
  double max_identity_err_stage1 = 0.0;
  double max_identity_err_stage2 = 0.0;
  double ks_statistic = 0.0;
  double ks_threshold = 0.0;
  // decoder 1 only: interference share of each stage's effective noise
  double residual_fraction_stage_a = 0.0;
  double residual_fraction_stage_b = 0.0;

  bool variances_in_band(double lo = 0.99, double hi = 1.01) const {
    for (const auto& c : variance_checks) {
      const double r = c.ratio();
      if (r < lo || r > hi) return false;
    }
    return true;
  }
};

namespace detail {

// Per-chunk moment accumulator; merged in fixed chunk order so the result
// is independent of the thread count.
struct Moments {
  double sum = 0.0, sum_sq = 0.0;
  void add(double x) {
    sum += x;
    sum_sq += x * x;
  }
  void merge(const Moments& o) {
    sum += o.sum;
    sum_sq += o.sum_sq;
  }
  double variance(double n) const {
    const double mean = sum / n;
    return sum_sq / n - mean * mean;
  }
};

struct CrossMoments {
  Moments x, y;
  double sum_xy = 0.0;
  void add(double a, double b) {
    x.add(a);
    y.add(b);
    sum_xy += a * b;
  }
  void merge(const CrossMoments& o) {
    x.merge(o.x);
    y.merge(o.y);
    sum_xy += o.sum_xy;
  }
  double correlation(double n) const {
    const double cov = sum_xy / n - (x.sum / n) * (y.sum / n);
    const double vx = x.variance(n), vy = y.variance(n);
    if (vx <= 0.0 || vy <= 0.0) return 0.0;
    return cov / std::sqrt(vx * vy);
  }
};

inline constexpr std::uint64_t kChunk = 1u << 16;

// Distance between two mod-lattice outputs, measured on the circle so that
// two float paths straddling a cell edge (difference ~delta) count as equal.
inline double cell_distance(double x, double y, double delta) {
  return std::abs(mod_lattice(x - y, delta));
}

// Runs fn(chunk_index, begin, end) over fixed chunks, possibly in parallel,
// and hands the partials to merge(chunk_index, partial) in chunk order.
template <class Partial, class ChunkFn, class MergeFn>
void chunked_run(std::uint64_t samples, unsigned threads, ChunkFn&& fn,
                 MergeFn&& merge) {
  const std::uint64_t nchunks = (samples + kChunk - 1) / kChunk;
  if (threads <= 1) {
    for (std::uint64_t c = 0; c < nchunks; ++c)
      merge(c, fn(c, c * kChunk, std::min(samples, (c + 1) * kChunk)));
    return;
  }
  std::vector<Partial> partials(nchunks);
  std::vector<std::future<void>> futures;
  std::atomic<std::uint64_t> next{0};
  for (unsigned t = 0; t < threads; ++t)
    futures.push_back(std::async(std::launch::async, [&] {
      for (std::uint64_t c = next.fetch_add(1); c < nchunks; c = next.fetch_add(1))
        partials[c] = fn(c, c * kChunk, std::min(samples, (c + 1) * kChunk));
    }));
  for (auto& f : futures) f.get();
  for (std::uint64_t c = 0; c < nchunks; ++c) merge(c, std::move(partials[c]));
}

// Two-sided Kolmogorov-Smirnov distance of `vals` (each in [0,1)) against
// the uniform distribution; `vals` is consumed.
inline double ks_uniform(std::vector<double>& vals) {
  std::sort(vals.begin(), vals.end());
  const double n = static_cast<double>(vals.size());
  double d = 0.0;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    const double f = vals[i];
    d = std::max(d, std::max(std::abs((i + 1) / n - f), std::abs(f - i / n)));
  }
  return d;
}

// Critical value c(alpha)/sqrt(n) with c = sqrt(ln(2/alpha)/2).
inline double ks_threshold(std::uint64_t n, double alpha = 1e-3) {
  return std::sqrt(std::log(2.0 / alpha) / 2.0) / std::sqrt(static_cast<double>(n));
}

}  // namespace detail

// Successive decoding at the second receiver: peel the common message,
// then the private one, tracking every effective-noise statistic against
// its closed-form prediction.
inline LatticeRunStats simulate_decoder2(const LatticeConfig& cfg, unsigned threads = 1) {
  cfg.validate();
  if (cfg.samples < 10'000)
    throw std::invalid_argument("simulate_decoder2: need at least 1e4 samples");
  const CounterRng rng(cfg.seed);
  const double d0 = cfg.delta0(), d2 = cfg.delta2();
  const double a0 = cfg.alpha0, ab0 = 1.0 - cfg.alpha0;
  const double a2 = cfg.alpha2, ab2 = 1.0 - cfg.alpha2;
  const double sq = std::sqrt(cfg.q), sn2 = std::sqrt(cfg.n2);

  struct Partial {
    detail::Moments u, u2, z02e, noise2;
    detail::CrossMoments us, z02e_s;
    double id1 = 0.0, id2 = 0.0;
  };
  std::vector<double> u_cell(cfg.samples);  // for the KS uniformity check

  Partial total;
  detail::chunked_run<Partial>(
      cfg.samples, threads,
      [&](std::uint64_t, std::uint64_t begin, std::uint64_t end) {
        Partial p;
        for (std::uint64_t i = begin; i < end; ++i) {
          const double s = sq * rng.normal(kStreamS, i);
          const double z2 = sn2 * rng.normal(kStreamZ2, i);
          const double dith0 = rng.uniform_centered(kStreamD0, i, d0 / 2.0);
          const double dith2 = rng.uniform_centered(kStreamD2, i, d2 / 2.0);
          const double v0 = rng.uniform_centered(kStreamV0, i, d0 / 2.0);
          const double v2 = rng.uniform_centered(kStreamV2, i, d2 / 2.0);
          const double u = mod_lattice(v0 - a0 * s + dith0, d0);
          const double u2 = mod_lattice(v2 - a2 * ab0 * s + dith2, d2);
          const double y2 = u + u2 + s + z2;
          const double stage1 = mod_lattice(a0 * y2 - dith0, d0);
          const double z02e = -ab0 * u + a0 * (u2 + z2);
          p.id1 = std::max(
              p.id1, detail::cell_distance(stage1, mod_lattice(v0 + z02e, d0), d0));
          const double stage2 = mod_lattice(a2 * (ab0 * y2 + z02e) - dith2, d2);
          const double noise2 = -ab2 * u2 + a2 * z2;
          p.id2 = std::max(
              p.id2, detail::cell_distance(stage2, mod_lattice(v2 + noise2, d2), d2));
          p.u.add(u);
          p.u2.add(u2);
          p.z02e.add(z02e);
          p.noise2.add(noise2);
          p.us.add(u, s);
          p.z02e_s.add(z02e, s);
          if (d0 > 0.0) u_cell[i] = u / d0 + 0.5;
        }
        return p;
      },
      [&](std::uint64_t, Partial p) {
        total.u.merge(p.u);
        total.u2.merge(p.u2);
        total.z02e.merge(p.z02e);
        total.noise2.merge(p.noise2);
        total.us.merge(p.us);
        total.z02e_s.merge(p.z02e_s);
        total.id1 = std::max(total.id1, p.id1);
        total.id2 = std::max(total.id2, p.id2);
      });

  const double n = static_cast<double>(cfg.samples);
  LatticeRunStats st;
  st.samples = cfg.samples;
  st.seed = cfg.seed;
  st.variance_checks = {
      {"Var(U)", cfg.sigma0_sq(), total.u.variance(n)},
      {"Var(U2)", cfg.sigma2_sq(), total.u2.variance(n)},
      {"Var(Z02e)",
       ab0 * ab0 * cfg.sigma0_sq() + a0 * a0 * (cfg.sigma2_sq() + cfg.n2),
       total.z02e.variance(n)},
      {"Var(stage2 noise)", ab2 * ab2 * cfg.sigma2_sq() + a2 * a2 * cfg.n2,
       total.noise2.variance(n)},
  };
  st.corr_u_s = total.us.correlation(n);
  st.corr_z02e_s = total.z02e_s.correlation(n);
  st.max_identity_err_stage1 = total.id1;
  st.max_identity_err_stage2 = total.id2;
  st.ks_statistic = detail::ks_uniform(u_cell);
  st.ks_threshold = detail::ks_threshold(cfg.samples);
  return st;
}

// Successive surrogate for the first receiver: stage A strips the
// genie-provided W and decodes the common lattice point; stage B rebuilds
// the private signal, with the interference residual tracked explicitly
// (it scales as Q/a^2 and vanishes in the strong-interference regime).
inline LatticeRunStats simulate_decoder1(const LatticeConfig& cfg, unsigned threads = 1) {
  cfg.validate();
  if (cfg.samples < 10'000)
    throw std::invalid_argument("simulate_decoder1: need at least 1e4 samples");
  if (cfg.a == 0.0)
    throw std::invalid_argument("simulate_decoder1: a = 0 has no crossover path");
  const CounterRng rng(cfg.seed);
  const double d0 = cfg.delta0(), d1 = cfg.delta1(), d2 = cfg.delta2();
  const double a = cfg.a;
  const double a0 = cfg.alpha0, ab0 = 1.0 - cfg.alpha0;
  const double a1 = cfg.alpha1, ab1 = 1.0 - cfg.alpha1;
  const double a2 = cfg.alpha2;
  const double sq = std::sqrt(cfg.q), sn1 = std::sqrt(cfg.n1);

  struct Partial {
    detail::Moments w, e0, e1;
    detail::CrossMoments us;
    double id_a = 0.0, id_b = 0.0;
  };

  Partial total;
  detail::chunked_run<Partial>(
      cfg.samples, threads,
      [&](std::uint64_t, std::uint64_t begin, std::uint64_t end) {
        Partial p;
        for (std::uint64_t i = begin; i < end; ++i) {
          const double s = sq * rng.normal(kStreamS, i);
          const double z1 = sn1 * rng.normal(kStreamZ1, i);
          const double dith0 = rng.uniform_centered(kStreamD0, i, d0 / 2.0);
          const double dith1 = rng.uniform_centered(kStreamD1, i, d1 / 2.0);
          const double dith2 = rng.uniform_centered(kStreamD2, i, d2 / 2.0);
          const double v0 = rng.uniform_centered(kStreamV0, i, d0 / 2.0);
          const double v1 = rng.uniform_centered(kStreamV1, i, d1 / 2.0);
          const double v2 = rng.uniform_centered(kStreamV2, i, d2 / 2.0);
          const double u = mod_lattice(v0 - a0 * s + dith0, d0);
          const double w = mod_lattice(v1 - a1 * ab0 * s + dith1, d1);
          const double u2 = mod_lattice(v2 - a2 * ab0 * s + dith2, d2);
          const double y1 = w + a * (u + u2) + (1.0 + a) * s + z1;

          // stage A: genie-removed W, MMSE-scaled common stage
          const double t0 = mod_lattice((a0 / a) * (y1 - w) - dith0, d0);
          const double e0 = -ab0 * u + a0 * (u2 + z1 / a) + (a0 / a) * s;
          p.id_a = std::max(
              p.id_a, detail::cell_distance(t0, mod_lattice(v0 + e0, d0), d0));

          // stage B: private signal rebuilt from the stage-A residue; the
          // remaining interference enters scaled by 1/a
          const double r = ab0 * (y1 - w) / a + e0;
          const double r_corr = r - (ab0 + 1.0 / a) * (1.0 - 1.0 / a) * s;
          const double r_prime = w / a + r_corr;
          const double t1 = mod_lattice(a1 * a * r_prime - dith1, d1);
          const double e1 =
              -ab1 * w + a1 * (a * u2 + z1) + (a1 / a) * s;
          p.id_b = std::max(
              p.id_b, detail::cell_distance(t1, mod_lattice(v1 + e1, d1), d1));

          p.w.add(w);
          p.e0.add(e0);
          p.e1.add(e1);
          p.us.add(u, s);
        }
        return p;
      },
      [&](std::uint64_t, Partial p) {
        total.w.merge(p.w);
        total.e0.merge(p.e0);
        total.e1.merge(p.e1);
        total.us.merge(p.us);
        total.id_a = std::max(total.id_a, p.id_a);
        total.id_b = std::max(total.id_b, p.id_b);
      });

  const double n = static_cast<double>(cfg.samples);
  const double pred_e0 = ab0 * ab0 * cfg.sigma0_sq() +
                         a0 * a0 * (cfg.sigma2_sq() + cfg.n1 / (a * a) +
                                    cfg.q / (a * a));
  const double pred_e1 = ab1 * ab1 * cfg.p1 +
                         a1 * a1 * (a * a * cfg.sigma2_sq() + cfg.n1) +
                         a1 * a1 * cfg.q / (a * a);
  LatticeRunStats st;
  st.samples = cfg.samples;
  st.seed = cfg.seed;
  st.variance_checks = {
      {"Var(W)", cfg.p1, total.w.variance(n)},
      {"Var(stageA noise)", pred_e0, total.e0.variance(n)},
      {"Var(stageB noise)", pred_e1, total.e1.variance(n)},
  };
  st.corr_u_s = total.us.correlation(n);
  st.max_identity_err_stage1 = total.id_a;
  st.max_identity_err_stage2 = total.id_b;
  st.residual_fraction_stage_a =
      pred_e0 > 0.0 ? (a0 * a0 * cfg.q / (a * a)) / pred_e0 : 0.0;
  st.residual_fraction_stage_b =
      pred_e1 > 0.0 ? (a1 * a1 * cfg.q / (a * a)) / pred_e1 : 0.0;
  return st;
}

struct ToyDecodeResult {
  double ser_stage1 = 0.0;
  double ser_stage2 = 0.0;
  double spacing_over_sigma1 = 0.0;
  double spacing_over_sigma2 = 0.0;
  bool spacing_warning = false;  // constellation spacing at or below noise sigma
};

// Finite-constellation demonstration on the decoder-2 chain: message points
// are equally spaced sublattice points inside each Voronoi cell, decoding is
// nearest-point with wraparound.
inline ToyDecodeResult toy_decode_demo(const LatticeConfig& cfg, int constellation_size,
                                       unsigned threads = 1) {
  cfg.validate();
  if (constellation_size < 1)
    throw std::invalid_argument("constellation size must be positive");
  const CounterRng rng(cfg.seed);
  const int m = constellation_size;
  const double d0 = cfg.delta0(), d2 = cfg.delta2();
  const double a0 = cfg.alpha0, ab0 = 1.0 - cfg.alpha0;
  const double a2 = cfg.alpha2;
  const double sq = std::sqrt(cfg.q), sn2 = std::sqrt(cfg.n2);
  auto point = [m](double delta, int j) {
    return -delta / 2.0 + delta * (j + 0.5) / m;
  };
  auto decode = [m](double y, double delta) {
    const int j = static_cast<int>(std::floor((y + delta / 2.0) / (delta / m)));
    return std::clamp(j, 0, m - 1);
  };

  struct Partial {
    std::uint64_t err1 = 0, err2 = 0;
  };
  Partial total;
  detail::chunked_run<Partial>(
      cfg.samples, threads,
      [&](std::uint64_t, std::uint64_t begin, std::uint64_t end) {
        Partial p;
        for (std::uint64_t i = begin; i < end; ++i) {
          const double s = sq * rng.normal(kStreamS, i);
          const double z2 = sn2 * rng.normal(kStreamZ2, i);
          const double dith0 = rng.uniform_centered(kStreamD0, i, d0 / 2.0);
          const double dith2 = rng.uniform_centered(kStreamD2, i, d2 / 2.0);
          const int j0 = static_cast<int>(rng.word(kStreamV0, i, 2) % m);
          const int j2 = static_cast<int>(rng.word(kStreamV2, i, 2) % m);
          const double v0 = point(d0, j0);
          const double v2 = point(d2, j2);
          const double u = mod_lattice(v0 - a0 * s + dith0, d0);
          const double u2 = mod_lattice(v2 - a2 * ab0 * s + dith2, d2);
          const double y2 = u + u2 + s + z2;
          const double stage1 = mod_lattice(a0 * y2 - dith0, d0);
          if (decode(stage1, d0) != j0) ++p.err1;
          const double z02e = -ab0 * u + a0 * (u2 + z2);
          const double stage2 = mod_lattice(a2 * (ab0 * y2 + z02e) - dith2, d2);
          if (decode(stage2, d2) != j2) ++p.err2;
        }
        return p;
      },
      [&](std::uint64_t, Partial p) {
        total.err1 += p.err1;
        total.err2 += p.err2;
      });

  const double n = static_cast<double>(cfg.samples);
  ToyDecodeResult res;
  res.ser_stage1 = total.err1 / n;
  res.ser_stage2 = total.err2 / n;
  const double sig1 =
      std::sqrt(ab0 * ab0 * cfg.sigma0_sq() + a0 * a0 * (cfg.sigma2_sq() + cfg.n2));
  const double sig2 = std::sqrt((1.0 - a2) * (1.0 - a2) * cfg.sigma2_sq() +
                                a2 * a2 * cfg.n2);
  res.spacing_over_sigma1 = sig1 > 0.0 ? (d0 / m) / sig1 : 1e30;
  res.spacing_over_sigma2 = sig2 > 0.0 ? (d2 / m) / sig2 : 1e30;
  res.spacing_warning = res.spacing_over_sigma1 <= 1.0 || res.spacing_over_sigma2 <= 1.0;
  return res;
}

}  // namespace zch::lattice

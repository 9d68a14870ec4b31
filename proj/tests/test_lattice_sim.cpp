#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "zch/lattice/lattice.hpp"
#include "zch/lattice/rng.hpp"
#include "zch/lattice/sim.hpp"

using namespace zch::lattice;

namespace {

bool stats_equal(const LatticeRunStats& a, const LatticeRunStats& b) {
  if (a.variance_checks.size() != b.variance_checks.size()) return false;
  for (std::size_t i = 0; i < a.variance_checks.size(); ++i) {
    if (a.variance_checks[i].predicted != b.variance_checks[i].predicted) return false;
    if (a.variance_checks[i].empirical != b.variance_checks[i].empirical) return false;
  }
  return a.corr_u_s == b.corr_u_s && a.corr_z02e_s == b.corr_z02e_s &&
         a.max_identity_err_stage1 == b.max_identity_err_stage1 &&
         a.max_identity_err_stage2 == b.max_identity_err_stage2 &&
         a.ks_statistic == b.ks_statistic;
}

}  // namespace

TEST_CASE("mod_lattice") {
  CHECK(mod_lattice(0.75, 1.0) == -0.25);
  CHECK(mod_lattice(0.25, 1.0) == 0.25);
  // half-open cell: the upper edge wraps to the lower one
  CHECK(mod_lattice(0.5, 1.0) == -0.5);
  CHECK(mod_lattice(-0.5, 1.0) == -0.5);
  // periodicity
  for (double x : {-3.7, 0.1, 12.34})
    CHECK_THAT(mod_lattice(x + 5.0 * 2.5, 2.5),
               Catch::Matchers::WithinAbs(mod_lattice(x, 2.5), 1e-12));
  CHECK_THROWS_AS(mod_lattice(1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(mod_lattice(1.0, -1.0), std::invalid_argument);
}

TEST_CASE("scalar shaping gap") {
  CHECK_THAT(scalar_shaping_gap_bits(), Catch::Matchers::WithinAbs(0.2546, 5e-4));
}

TEST_CASE("rate bound worked examples") {
  SECTION("second decoder, three-quarters scaling") {
    LatticeConfig c;
    c.rho = 1.0;
    c.p2 = 3.0;
    c.n2 = 1.0;
    c.alpha0 = 0.75;
    CHECK_THAT(theorem5_bounds(c).a2_bound, Catch::Matchers::WithinAbs(1.0, 1e-12));
  }
  SECTION("unit scaling reduces to the plain SNR log") {
    LatticeConfig c;
    c.rho = 1.0;
    c.p2 = 3.0;
    c.n2 = 1.0;
    c.alpha0 = 1.0;
    CHECK_THAT(theorem5_bounds(c).a2_bound,
               Catch::Matchers::WithinAbs(0.5 * std::log2(3.0), 1e-12));
    c.a = 2.0;
    c.n1 = 1.0;
    CHECK_THAT(theorem5_bounds(c).a1_bound,
               Catch::Matchers::WithinAbs(0.5 * std::log2(12.0), 1e-12));
  }
  SECTION("degenerate splits clamp to zero") {
    LatticeConfig c;
    c.rho = 0.0;
    auto b = theorem5_bounds(c);
    CHECK(b.a1_bound == 0.0);
    CHECK(b.a2_bound == 0.0);
    CHECK(b.r21() == 0.0);
  }
  SECTION("validation") {
    LatticeConfig c;
    c.rho = 1.5;
    CHECK_THROWS_AS(theorem5_bounds(c), std::invalid_argument);
    c = LatticeConfig{};
    c.alpha1 = -0.1;
    CHECK_THROWS_AS(theorem5_bounds(c), std::invalid_argument);
  }
}

TEST_CASE("MMSE scalings maximize each bound") {
  LatticeConfig base;
  base.p1 = 2.0;
  base.p2 = 3.0;
  base.n1 = 0.7;
  base.n2 = 1.3;
  base.a = 4.0;
  for (double rho : {0.2, 0.5, 0.9}) {
    LatticeConfig c = base;
    c.rho = rho;
    const auto o = optimal_alphas(c);
    const double rb = 1.0 - rho;

    // closed forms at the optimum
    c.alpha0 = o.alpha0_opt2;
    CHECK_THAT(theorem5_bounds(c).a2_bound,
               Catch::Matchers::WithinAbs(
                   0.5 * std::log2(1.0 + rho * c.p2 / (rb * c.p2 + c.n2)), 1e-12));
    c.alpha0 = o.alpha0_opt1;
    CHECK_THAT(theorem5_bounds(c).a1_bound,
               Catch::Matchers::WithinAbs(
                   0.5 * std::log2((c.a * c.a * c.p2 + c.n1) /
                                   (c.a * c.a * rb * c.p2 + c.n1)),
                   1e-12));
    c.alpha1 = o.alpha1_opt;
    CHECK_THAT(theorem5_bounds(c).r11_bound,
               Catch::Matchers::WithinAbs(
                   0.5 * std::log2(1.0 + c.p1 / (c.a * c.a * rb * c.p2 + c.n1)),
                   1e-12));
    c.alpha2 = o.alpha2_opt;
    CHECK_THAT(theorem5_bounds(c).r22_bound,
               Catch::Matchers::WithinAbs(0.5 * std::log2(1.0 + rb * c.p2 / c.n2),
                                          1e-12));

    // grid search never beats the closed form
    double best_a1 = 0, best_a2 = 0, best_r11 = 0, best_r22 = 0;
    for (int i = 0; i <= 1000; ++i) {
      LatticeConfig g = base;
      g.rho = rho;
      g.alpha0 = g.alpha1 = g.alpha2 = i / 1000.0;
      const auto b = theorem5_bounds(g);
      best_a1 = std::max(best_a1, b.a1_bound);
      best_a2 = std::max(best_a2, b.a2_bound);
      best_r11 = std::max(best_r11, b.r11_bound);
      best_r22 = std::max(best_r22, b.r22_bound);
    }
    LatticeConfig opt = base;
    opt.rho = rho;
    opt.alpha0 = o.alpha0_opt1;
    CHECK(theorem5_bounds(opt).a1_bound >= best_a1 - 1e-9);
    opt.alpha0 = o.alpha0_opt2;
    CHECK(theorem5_bounds(opt).a2_bound >= best_a2 - 1e-9);
    opt.alpha1 = o.alpha1_opt;
    CHECK(theorem5_bounds(opt).r11_bound >= best_r11 - 1e-9);
    opt.alpha2 = o.alpha2_opt;
    CHECK(theorem5_bounds(opt).r22_bound >= best_r22 - 1e-9);
  }
}

TEST_CASE("optimal_alphas special values") {
  LatticeConfig c;
  c.rho = 0.0;
  auto o = optimal_alphas(c);
  CHECK(o.alpha0_opt1 == 0.0);
  CHECK(o.alpha0_opt2 == 0.0);
  c.rho = 1.0;
  c.p2 = 1.0;
  c.n2 = 2.0;
  CHECK_THAT(optimal_alphas(c).alpha0_opt2, Catch::Matchers::WithinAbs(1.0 / 3.0, 1e-15));
}

TEST_CASE("region_union") {
  LatticeConfig cfg;
  cfg.a = 5.0;
  SECTION("grid shape and frontier sanity") {
    auto r = region_union(cfg, {0.25, 0.5, 0.75}, {0.3, 0.6, 0.9});
    CHECK(r.cloud.size() == 9);
    CHECK_FALSE(r.frontier.empty());
    // no frontier point strictly dominates another frontier point
    for (const auto& v : r.frontier)
      for (const auto& w : r.frontier) {
        const bool geq = w.r21 >= v.r21 - 1e-12 && w.r11 >= v.r11 - 1e-12 &&
                         w.r22 >= v.r22 - 1e-12;
        const bool strict = w.r21 > v.r21 + 1e-12 || w.r11 > v.r11 + 1e-12 ||
                            w.r22 > v.r22 + 1e-12;
        CHECK_FALSE((geq && strict));
      }
  }
  SECTION("a finer grid never loses ground") {
    auto coarse = region_union(cfg, {0.5}, {0.5});
    auto fine = region_union(cfg, {0.25, 0.5, 0.75}, {0.25, 0.5, 0.75});
    for (const auto& f : coarse.frontier) {
      bool covered = false;
      for (const auto& w : fine.cloud)
        covered = covered || (w.r21 >= f.r21 - 1e-9 && w.r11 >= f.r11 - 1e-9 &&
                              w.r22 >= f.r22 - 1e-9);
      CHECK(covered);
    }
  }
  SECTION("grid points outside the unit interval are rejected") {
    CHECK_THROWS_AS(region_union(cfg, {1.2}, {0.5}), std::invalid_argument);
    CHECK_THROWS_AS(region_union(cfg, {0.5}, {-0.1}), std::invalid_argument);
  }
}

TEST_CASE("counter rng") {
  CounterRng rng(123);
  SECTION("pure function of the counter") {
    CHECK(rng.word(1, 42, 0) == rng.word(1, 42, 0));
    CHECK(rng.word(1, 42, 0) != rng.word(1, 43, 0));
    CHECK(rng.word(1, 42, 0) != rng.word(2, 42, 0));
    CHECK(rng.word(1, 42, 0) != CounterRng(124).word(1, 42, 0));
  }
  SECTION("ranges") {
    for (int i = 0; i < 1000; ++i) {
      const double u = rng.uniform01(3, i);
      CHECK(u >= 0.0);
      CHECK(u < 1.0);
      const double c = rng.uniform_centered(4, i, 2.0);
      CHECK(c >= -2.0);
      CHECK(c < 2.0);
    }
  }
  SECTION("normal moments") {
    double sum = 0, sum_sq = 0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
      const double x = rng.normal(5, i);
      sum += x;
      sum_sq += x * x;
    }
    CHECK_THAT(sum / n, Catch::Matchers::WithinAbs(0.0, 0.01));
    CHECK_THAT(sum_sq / n, Catch::Matchers::WithinAbs(1.0, 0.02));
  }
}

TEST_CASE("second-decoder simulation") {
  LatticeConfig cfg;
  cfg.p2 = 3.0;
  cfg.n2 = 0.8;
  cfg.q = 2.0;
  cfg.rho = 0.6;
  cfg.alpha0 = 0.7;
  cfg.alpha2 = 0.6;
  cfg.samples = 100'000;
  cfg.seed = 11;

  SECTION("statistics match the predictions") {
    auto st = simulate_decoder2(cfg);
    CHECK(st.variances_in_band(0.97, 1.03));
    CHECK(st.max_identity_err_stage1 <= 1e-12);
    CHECK(st.max_identity_err_stage2 <= 1e-12);
    CHECK(st.ks_statistic <= st.ks_threshold);
    const double corr_limit = 4.0 / std::sqrt(static_cast<double>(cfg.samples));
    CHECK(std::abs(st.corr_u_s) <= corr_limit);
    CHECK(std::abs(st.corr_z02e_s) <= corr_limit);
  }
  SECTION("thread count does not change the result") {
    auto s1 = simulate_decoder2(cfg, 1);
    auto s4 = simulate_decoder2(cfg, 4);
    CHECK(stats_equal(s1, s4));
  }
  SECTION("unit scaling prediction") {
    LatticeConfig c = cfg;
    c.alpha0 = 1.0;
    c.samples = 10'000;
    auto st = simulate_decoder2(c);
    CHECK_THAT(st.variance_checks[2].predicted,
               Catch::Matchers::WithinAbs(c.sigma2_sq() + c.n2, 1e-12));
  }
  SECTION("predictions are interference-free") {
    LatticeConfig lo = cfg, hi = cfg;
    lo.q = 0.1;
    hi.q = 10.0;
    lo.samples = hi.samples = 10'000;
    auto a = simulate_decoder2(lo), b = simulate_decoder2(hi);
    REQUIRE(a.variance_checks.size() == b.variance_checks.size());
    for (std::size_t i = 0; i < a.variance_checks.size(); ++i)
      CHECK(a.variance_checks[i].predicted == b.variance_checks[i].predicted);
  }
  SECTION("input validation") {
    LatticeConfig bad = cfg;
    bad.samples = 100;
    CHECK_THROWS_AS(simulate_decoder2(bad), std::invalid_argument);
  }
}

TEST_CASE("first-decoder simulation") {
  LatticeConfig cfg;
  cfg.p1 = 2.0;
  cfg.p2 = 3.0;
  cfg.n1 = 0.9;
  cfg.q = 1.0;
  cfg.a = 10.0;
  cfg.rho = 0.5;
  cfg.alpha0 = 0.8;
  cfg.alpha1 = 0.6;
  cfg.samples = 100'000;
  cfg.seed = 5;

  SECTION("statistics match the predictions") {
    auto st = simulate_decoder1(cfg);
    CHECK(st.variances_in_band(0.97, 1.03));
    CHECK(st.max_identity_err_stage1 <= 1e-12);
    CHECK(st.max_identity_err_stage2 <= 1e-12);
    CHECK(st.residual_fraction_stage_a < 0.05);
    CHECK(st.residual_fraction_stage_b < 0.05);
  }
  SECTION("thread reproducibility") {
    auto s1 = simulate_decoder1(cfg, 1);
    auto s3 = simulate_decoder1(cfg, 3);
    CHECK(stats_equal(s1, s3));
  }
  SECTION("strong interference gain shrinks the residual share") {
    LatticeConfig big = cfg;
    big.a = 100.0;
    big.q = 10.0;
    big.samples = 10'000;
    auto st = simulate_decoder1(big);
    CHECK(st.residual_fraction_stage_a < 1e-3);
    CHECK(st.residual_fraction_stage_b < 1e-3);
  }
  SECTION("input validation") {
    LatticeConfig bad = cfg;
    bad.a = 0.0;
    CHECK_THROWS_AS(simulate_decoder1(bad), std::invalid_argument);
    bad = cfg;
    bad.samples = 10;
    CHECK_THROWS_AS(simulate_decoder1(bad), std::invalid_argument);
  }
}

TEST_CASE("toy constellation demo") {
  SECTION("noiseless chain decodes perfectly") {
    LatticeConfig c;
    c.p2 = 1.0;
    c.rho = 0.99;
    c.n2 = 0.0;
    c.q = 0.0;
    c.alpha0 = 1.0;
    c.alpha2 = 1.0;
    c.samples = 20'000;
    auto res = toy_decode_demo(c, 2);
    CHECK(res.ser_stage1 == 0.0);
    CHECK(res.ser_stage2 == 0.0);
    CHECK_FALSE(res.spacing_warning);
  }
  SECTION("overpacked constellation warns and errs") {
    LatticeConfig c;
    c.p2 = 2.0;
    c.rho = 0.5;
    c.n2 = 1.0;
    c.q = 1.0;
    c.alpha0 = 0.6;
    c.alpha2 = 0.6;
    c.samples = 20'000;
    auto res = toy_decode_demo(c, 64);
    CHECK(res.spacing_warning);
    CHECK(res.ser_stage1 > 0.0);
    CHECK(res.ser_stage2 > 0.0);
  }
  SECTION("validation") {
    LatticeConfig c;
    CHECK_THROWS_AS(toy_decode_demo(c, 0), std::invalid_argument);
  }
}

// zchtool: rate-region evaluation, polyhedral projection, Gaussian
// dirty-paper sweeps, and mod-lattice Monte Carlo simulation.
//
// Exit codes: 0 ok, 2 input/validation error, 3 oracle mismatch,
// 4 statistical-check failure.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "zch/gauss/channel.hpp"
#include "zch/gauss/dpc.hpp"
#include "zch/io/csv.hpp"
#include "zch/io/json_io.hpp"
#include "zch/io/manifest.hpp"
#include "zch/io/svg.hpp"
#include "zch/lattice/lattice.hpp"
#include "zch/lattice/rng.hpp"
#include "zch/lattice/sim.hpp"
#include "zch/poly/fme.hpp"
#include "zch/regions/dmc.hpp"

using namespace zch;
using io::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitOracle = 3;
constexpr int kExitStatistical = 4;

void emit(const json& j, const std::string& out_path, const std::string& subcommand,
          const json& config) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  io::RunManifest man(subcommand, config);
  io::save_json_file(out_path, j);
  man.add_output(out_path);
  man.write(out_path + ".manifest.json");
}

// ---- dmc-region ---------------------------------------------------------

json vertices_json(const std::vector<std::vector<double>>& vs) {
  json arr = json::array();
  for (const auto& v : vs) arr.push_back(v);
  return arr;
}

bool vertex_sets_match(const std::vector<std::vector<poly::Rational>>& a,
                       const std::vector<std::vector<double>>& b, double tol,
                       double* max_dev = nullptr) {
  if (max_dev) *max_dev = 0.0;
  if (a.size() != b.size()) return false;
  bool ok = true;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) {
      const double dev = std::abs(static_cast<double>(a[i][j]) - b[i][j]);
      if (max_dev) *max_dev = std::max(*max_dev, dev);
      if (dev > tol) ok = false;
    }
  return ok;
}

// The exact projection of the split-rate system onto (R11, R21, R22) is the
// three-inequality closed form intersected with the four facets inherited
// directly from rows (15), (16), (17), (20).
regions::RateRegion augmented_region(const prob::JointDistribution& d) {
  regions::RateRegion r = regions::theorem1_region(d, regions::TripleSumVariant::DPrime);
  const auto b = regions::split_rate_bounds(d);
  r.add_bound({1, 1, 0}, b.i15, "(15)");
  r.add_bound({0, 1, 0}, b.i16, "(16)");
  r.add_bound({1, 0, 0}, b.i17, "(17)");
  r.add_bound({0, 0, 1}, b.i20, "(20)");
  return r;
}

json fme_check_report(const prob::JointDistribution& d, bool* oracle_ok) {
  const auto b = regions::split_rate_bounds(d);
  json rep;
  rep["split_bounds"] = {{"(15)", b.i15}, {"(16)", b.i16}, {"(17)", b.i17},
                         {"(18)", b.i18}, {"(19)", b.i19}, {"(20)", b.i20},
                         {"(21)", b.i21}};
  const double min_bound = std::min({b.i15, b.i16, b.i17, b.i18, b.i19, b.i20, b.i21});
  rep["all_bounds_nonnegative"] = min_bound >= 0.0;
  if (min_bound < 0.0) {
    // a negative split bound makes the split system infeasible; the closed
    // forms clamp at zero instead, so the comparison is skipped
    rep["skipped"] = "split-rate system infeasible (negative bound)";
    *oracle_ok = true;
    return rep;
  }
  auto rsys = poly::convert_system<poly::Rational>(regions::split_rate_system(d));
  auto proj = poly::project(rsys, {"R11", "R21", "R22"});
  auto pv = poly::enumerate_vertices(proj);
  rep["projection_vertices"] = [&] {
    json arr = json::array();
    for (const auto& v : pv) {
      std::vector<double> fv;
      for (const auto& x : v) fv.push_back(static_cast<double>(x));
      arr.push_back(fv);
    }
    return arr;
  }();

  double dev = 0.0;
  const bool aug_ok =
      vertex_sets_match(pv, augmented_region(d).vertices(), 1e-9, &dev);
  rep["matches_augmented_characterization"] = aug_ok;
  rep["max_vertex_deviation"] = dev;
  rep["matches_closed_form_dprime"] = vertex_sets_match(
      pv, regions::theorem1_region(d, regions::TripleSumVariant::DPrime).vertices(),
      1e-9);
  rep["matches_closed_form_literal_d"] = vertex_sets_match(
      pv, regions::theorem1_region(d, regions::TripleSumVariant::LiteralD).vertices(),
      1e-9);
  rep["note"] =
      "the projection generally adds the facets (15),(16),(17),(20) to the "
      "three-inequality closed form; a closed-form mismatch is expected";
  *oracle_ok = aug_ok;
  return rep;
}

int cmd_dmc_region(const std::string& dist_path, int theorem, bool fme_check,
                   const std::string& out_path) {
  const json dist_json = io::load_json_file(dist_path);
  const auto dist = io::distribution_from_json(dist_json);
  json result;
  result["theorem"] = theorem;
  if (theorem == 1) {
    const auto t = regions::theorem1_bounds(dist);
    result["bounds"] = {{"A", t.a},      {"B", t.b}, {"C", t.c},
                        {"D", t.d},      {"E", t.e}, {"D_prime", t.d_prime}};
    result["region"] = io::region_to_json(
        regions::theorem1_region(dist, regions::TripleSumVariant::DPrime));
    result["region_literal_d"] = io::region_to_json(
        regions::theorem1_region(dist, regions::TripleSumVariant::LiteralD));
  } else if (theorem == 2) {
    result["region"] = io::region_to_json(regions::theorem2_region(dist));
  } else {
    result["region"] = io::region_to_json(regions::theorem3_outer(dist));
  }
  bool oracle_ok = true;
  if (fme_check) {
    if (theorem != 1)
      throw std::invalid_argument("--fme-check applies to --theorem 1 only");
    result["fme_check"] = fme_check_report(dist, &oracle_ok);
  }
  const json config = {{"dist", dist_path}, {"theorem", theorem},
                       {"fme_check", fme_check}};
  emit(result, out_path, "dmc-region", config);
  if (!oracle_ok) {
    std::cerr << "fme-check: projection disagrees with the exact characterization\n";
    return kExitOracle;
  }
  return kExitOk;
}

// ---- fme ----------------------------------------------------------------

int cmd_fme(const std::string& in_path, const std::string& keep_csv,
            const std::string& mode, const std::string& out_path) {
  auto sys = io::system_from_json(io::load_json_file(in_path));
  std::vector<std::string> keep;
  std::string tok;
  for (std::istringstream ss(keep_csv); std::getline(ss, tok, ',');)
    if (!tok.empty()) keep.push_back(tok);
  if (keep.empty()) throw std::invalid_argument("--keep needs at least one variable");

  poly::System<double> projected;
  if (mode == "rational") {
    auto rsys = poly::convert_system<poly::Rational>(sys);
    projected = poly::convert_system<double>(poly::project(rsys, keep));
  } else if (mode == "float") {
    projected = poly::project(sys, keep);
  } else {
    throw std::invalid_argument("--mode must be rational or float");
  }
  json result = io::system_to_json(projected, mode);
  if (projected.vars.size() <= 4) {
    try {
      result["vertices"] = vertices_json(poly::enumerate_vertices(projected));
    } catch (const poly::UnboundedError& e) {
      result["unbounded"] = e.what();
    }
  }
  const json config = {{"in", in_path}, {"keep", keep}, {"mode", mode}};
  emit(result, out_path, "fme", config);
  return kExitOk;
}

// ---- gauss-dpc ----------------------------------------------------------

json lemma1_report(const gauss::StandardChannel& base) {
  json rep;
  rep["points"] = 0;
  double max_resid = 0.0, max_gap = 0.0;
  int n = 0;
  for (int ip = 1; ip <= 10; ++ip)
    for (int jp = 1; jp <= 10; ++jp)
      for (int ka = 1; ka <= 10; ++ka)
        for (double q : {0.1, 1.0, 10.0})
          for (double xi : {0.0, 0.3, 1.0}) {
            gauss::StandardChannel ch = base;
            ch.p1 = 0.3 * ip;
            ch.p2 = 0.3 * jp;
            ch.a = 0.3 * ka;
            ch.a1 = 1.0 + ch.a;
            ch.q = q;
            const auto r = gauss::lemma1_residuals(ch, gauss::costa_params(ch, xi));
            max_resid = std::max({max_resid, std::abs(r.r_u), std::abs(r.r_w)});
            for (double g : r.mi_gaps) max_gap = std::max(max_gap, std::abs(g));
            ++n;
          }
  rep["points"] = n;
  rep["max_residual"] = max_resid;
  rep["max_mi_gap"] = max_gap;
  rep["pass"] = max_resid <= 1e-12 && max_gap <= 1e-9;
  return rep;
}

json q_sweep_report(std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
  std::uniform_real_distribution<double> u(0.2, 2.0);
  json rep;
  bool pass = true;
  rep["channels"] = json::array();
  for (int i = 0; i < 20; ++i) {
    gauss::StandardChannel ch{u(rng), u(rng), u(rng), u(rng), u(rng), 0.0};
    const double xi = 0.5 * u(rng);
    bool equal = true;
    gauss::DpcBounds ref{};
    for (double q : {0.0, 1.0, 100.0}) {
      ch.q = q;
      auto p = gauss::costa_params(ch, xi);
      p.gamma = p.alpha;
      const auto b = gauss::dpc_bounds(ch, p);
      if (q == 0.0)
        ref = b;
      else
        equal = equal && b.b61 == ref.b61 && b.b62 == ref.b62 && b.b63 == ref.b63;
    }
    pass = pass && equal;
    rep["channels"].push_back({{"a", ch.a}, {"a1", ch.a1}, {"a2", ch.a2},
                               {"P1", ch.p1}, {"P2", ch.p2}, {"xi", xi},
                               {"bounds_61_63_q_invariant", equal}});
  }
  rep["pass"] = pass;
  return rep;
}

int cmd_gauss_dpc(const std::string& channel_path, int xi_grid, int gamma_grid,
                  const std::string& out_path, const std::string& svg_path,
                  const std::string& verify, bool q_sweep, std::uint64_t seed) {
  if (verify == "lemma1") {
    const auto ch = io::channel_from_json(io::load_json_file(channel_path)).standard;
    const json rep = lemma1_report(ch);
    std::cout << rep.dump(2) << "\n";
    return rep["pass"].get<bool>() ? kExitOk : kExitOracle;
  }
  if (!verify.empty()) throw std::invalid_argument("unknown --verify suite " + verify);
  if (q_sweep) {
    const json rep = q_sweep_report(seed);
    std::cout << rep.dump(2) << "\n";
    return rep["pass"].get<bool>() ? kExitOk : kExitOracle;
  }

  const auto ch = io::channel_from_json(io::load_json_file(channel_path)).standard;
  if (xi_grid < 2 || gamma_grid < 1)
    throw std::invalid_argument("grid sizes must be >= 2 (xi) and >= 1 (gamma)");
  if (out_path.empty()) throw std::invalid_argument("sweep mode needs --out <csv>");

  io::RunManifest man("gauss-dpc",
                      json{{"channel", channel_path}, {"xi_grid", xi_grid},
                           {"gamma_grid", gamma_grid}, {"seed", seed}});
  io::CsvWriter csv(out_path, {"xi", "gamma", "b61", "b62", "b63", "b64", "b65"});
  std::vector<std::array<double, 3>> cloud;
  std::vector<std::array<double, 6>> mid_slice;  // for the SVG
  const int mid_gamma = (gamma_grid - 1) / 2;
  for (int i = 0; i < xi_grid; ++i) {
    const double xi = static_cast<double>(i) / (xi_grid - 1);
    for (int g = 0; g < gamma_grid; ++g) {
      const double gamma =
          gamma_grid == 1 ? 0.0 : -2.0 + 4.0 * static_cast<double>(g) / (gamma_grid - 1);
      const auto p = gauss::costa_params(ch, xi, gamma);
      double b61 = NAN, b62 = NAN, b63 = NAN, b64 = NAN, b65 = NAN;
      try {
        const auto b = gauss::dpc_bounds(ch, p);
        b61 = b.b61;
        b62 = b.b62;
        b63 = b.b63;
        b64 = b.b64;
        b65 = b.b65;
        for (const auto& v : gauss::dpc_region(ch, p).vertices())
          cloud.push_back({v[0], v[1], v[2]});
      } catch (const prob::NumericalError&) {
        // closed-form matrix indefinite at this (xi, gamma); row kept as NaN
      }
      csv.row(std::vector<double>{xi, gamma, b61, b62, b63, b64, b65});
      if (g == mid_gamma) mid_slice.push_back({xi, b61, b62, b63, b64, b65});
    }
  }
  man.add_output(out_path);

  // non-dominated hull of the per-point region vertices
  std::set<std::array<double, 3>> uniq(cloud.begin(), cloud.end());
  std::vector<std::array<double, 3>> pts(uniq.begin(), uniq.end());
  json hull = json::array();
  for (const auto& v : pts) {
    bool dominated = false;
    for (const auto& w : pts) {
      const bool geq =
          w[0] >= v[0] - 1e-12 && w[1] >= v[1] - 1e-12 && w[2] >= v[2] - 1e-12;
      const bool strict =
          w[0] > v[0] + 1e-12 || w[1] > v[1] + 1e-12 || w[2] > v[2] + 1e-12;
      if (geq && strict) {
        dominated = true;
        break;
      }
    }
    if (!dominated) hull.push_back({v[0], v[1], v[2]});
  }
  const std::string hull_path = out_path + ".hull.json";
  io::save_json_file(hull_path, json{{"coords", {"R11", "R21", "R22"}},
                                     {"frontier", hull}});
  man.add_output(hull_path);

  if (!svg_path.empty()) {
    const char* labels[] = {"b61", "b62", "b63", "b64", "b65"};
    const char* colors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd"};
    std::vector<io::SvgSeries> series;
    for (int k = 0; k < 5; ++k) {
      io::SvgSeries s;
      s.label = labels[k];
      s.color = colors[k];
      for (const auto& row : mid_slice)
        if (std::isfinite(row[k + 1])) s.points.push_back({row[0], row[k + 1]});
      series.push_back(std::move(s));
    }
    io::write_svg_plot(svg_path, "rate bounds vs xi (mid-gamma slice)", series);
    man.add_output(svg_path);
  }
  man.write(out_path + ".manifest.json");
  return kExitOk;
}

// ---- lattice ------------------------------------------------------------

lattice::LatticeConfig load_lattice_config(const std::string& path) {
  if (path.empty()) {
    lattice::LatticeConfig c;
    return c;
  }
  return io::lattice_config_from_json(io::load_json_file(path));
}

int cmd_lattice_region(const std::string& config_path, int rho_grid, int alpha0_grid,
                       const std::string& out_path) {
  auto cfg = load_lattice_config(config_path);
  if (rho_grid < 2 || alpha0_grid < 2)
    throw std::invalid_argument("grid sizes must be >= 2");
  if (out_path.empty()) throw std::invalid_argument("region mode needs --out <csv>");
  std::vector<double> rhos, alphas;
  for (int i = 0; i < rho_grid; ++i)
    rhos.push_back(static_cast<double>(i) / (rho_grid - 1));
  for (int i = 0; i < alpha0_grid; ++i)
    alphas.push_back(static_cast<double>(i) / (alpha0_grid - 1));
  const auto region = lattice::region_union(cfg, rhos, alphas);

  io::RunManifest man("lattice region",
                      json{{"config", io::lattice_config_to_json(cfg)},
                           {"rho_grid", rho_grid}, {"alpha0_grid", alpha0_grid}});
  io::CsvWriter csv(out_path, {"rho", "alpha0", "R21", "R11", "R22"});
  for (const auto& p : region.frontier)
    csv.row(std::vector<double>{p.rho, p.alpha0, p.r21, p.r11, p.r22});
  man.add_output(out_path);
  man.write(out_path + ".manifest.json");
  std::cout << "frontier points: " << region.frontier.size() << " of "
            << region.cloud.size() << "\n";
  return kExitOk;
}

int cmd_lattice_sim(const std::string& config_path, int decoder,
                    std::uint64_t samples, std::uint64_t seed, unsigned threads,
                    const std::string& out_path) {
  auto cfg = load_lattice_config(config_path);
  if (samples > 0) cfg.samples = samples;
  cfg.seed = seed;
  const auto stats = decoder == 2 ? lattice::simulate_decoder2(cfg, threads)
                                  : lattice::simulate_decoder1(cfg, threads);
  json result = io::run_stats_to_json(stats);
  result["decoder"] = decoder;
  result["config"] = io::lattice_config_to_json(cfg);
  const json config = {{"config_file", config_path}, {"decoder", decoder},
                       {"samples", cfg.samples},     {"seed", seed},
                       {"threads", threads}};
  emit(result, out_path, "lattice sim", config);
  if (!result["pass"]["all"].get<bool>()) {
    std::cerr << "statistical checks failed: " << result["pass"].dump() << "\n";
    return kExitStatistical;
  }
  return kExitOk;
}

// ---- verify -------------------------------------------------------------

int cmd_verify(const std::string& suite, std::uint64_t seed) {
  if (suite == "lemma1") {
    gauss::StandardChannel base{1.0, 2.0, 1.0, 1.0, 1.0, 1.0};
    const json rep = lemma1_report(base);
    std::cout << rep.dump(2) << "\n";
    return rep["pass"].get<bool>() ? kExitOk : kExitOracle;
  }
  if (suite == "q-invariance") {
    const json rep = q_sweep_report(seed);
    std::cout << rep.dump(2) << "\n";
    return rep["pass"].get<bool>() ? kExitOk : kExitOracle;
  }
  if (suite == "lattice-identities") {
    bool pass = true;
    double max_err = 0.0;
    std::mt19937_64 rng(seed ^ 0xabcdefull);
    std::uniform_real_distribution<double> u(0.3, 3.0);
    for (int i = 0; i < 50; ++i) {
      lattice::LatticeConfig c;
      c.p1 = u(rng);
      c.p2 = u(rng);
      c.n1 = u(rng);
      c.n2 = u(rng);
      c.a = u(rng);
      c.rho = 0.2 + 0.6 * (u(rng) - 0.3) / 2.7;
      const auto o = lattice::optimal_alphas(c);
      const double rb = c.rho_bar();
      c.alpha0 = o.alpha0_opt2;
      max_err = std::max(
          max_err,
          std::abs(lattice::theorem5_bounds(c).a2_bound -
                   0.5 * std::log2(1.0 + c.rho * c.p2 / (rb * c.p2 + c.n2))));
      c.alpha0 = o.alpha0_opt1;
      max_err = std::max(
          max_err, std::abs(lattice::theorem5_bounds(c).a1_bound -
                            0.5 * std::log2((c.a * c.a * c.p2 + c.n1) /
                                            (c.a * c.a * rb * c.p2 + c.n1))));
      c.alpha1 = o.alpha1_opt;
      max_err = std::max(
          max_err,
          std::abs(lattice::theorem5_bounds(c).r11_bound -
                   0.5 * std::log2(1.0 + c.p1 / (c.a * c.a * rb * c.p2 + c.n1))));
      c.alpha2 = o.alpha2_opt;
      max_err = std::max(max_err,
                         std::abs(lattice::theorem5_bounds(c).r22_bound -
                                  0.5 * std::log2(1.0 + rb * c.p2 / c.n2)));
    }
    pass = max_err <= 1e-12;
    std::cout << json{{"suite", suite}, {"max_identity_error", max_err},
                      {"pass", pass}}
                     .dump(2)
              << "\n";
    return pass ? kExitOk : kExitOracle;
  }
  if (suite == "decoder2") {
    lattice::LatticeConfig c;
    c.samples = 1'000'000;
    c.seed = seed;
    const auto stats = lattice::simulate_decoder2(c);
    const json rep = io::run_stats_to_json(stats);
    std::cout << rep.dump(2) << "\n";
    return rep["pass"]["all"].get<bool>() ? kExitOk : kExitStatistical;
  }
  throw std::invalid_argument(
      "unknown suite (expected lemma1, q-invariance, lattice-identities, decoder2)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"state-dependent Z-channel rate-region toolkit"};
  app.require_subcommand(1);

  // dmc-region
  std::string dmc_dist, dmc_out;
  int dmc_theorem = 1;
  bool dmc_fme = false;
  auto* dmc = app.add_subcommand("dmc-region", "evaluate finite-alphabet regions");
  dmc->add_option("--dist", dmc_dist, "distribution JSON")->required();
  dmc->add_option("--theorem", dmc_theorem, "1, 2, or 3")
      ->check(CLI::IsMember({1, 2, 3}));
  dmc->add_flag("--fme-check", dmc_fme, "cross-check against exact projection");
  dmc->add_option("--out", dmc_out, "output JSON path");

  // fme
  std::string fme_in, fme_keep, fme_mode = "rational", fme_out;
  auto* fme = app.add_subcommand("fme", "project a linear system");
  fme->add_option("--in", fme_in, "system JSON")->required();
  fme->add_option("--keep", fme_keep, "comma-separated variables to keep")->required();
  fme->add_option("--mode", fme_mode, "rational or float");
  fme->add_option("--out", fme_out, "output JSON path");

  // gauss-dpc
  std::string g_channel, g_out, g_svg, g_verify;
  int g_xi = 101, g_gamma = 41;
  bool g_qsweep = false;
  std::uint64_t g_seed = 0;
  auto* gdp = app.add_subcommand("gauss-dpc", "Gaussian dirty-paper sweeps");
  gdp->add_option("--channel", g_channel, "channel JSON");
  gdp->add_option("--xi-grid", g_xi, "number of xi points in [0,1]");
  gdp->add_option("--gamma-grid", g_gamma, "number of gamma points in [-2,2]");
  gdp->add_option("--out", g_out, "output CSV path");
  gdp->add_option("--svg", g_svg, "optional SVG plot path");
  gdp->add_option("--verify", g_verify, "verification suite (lemma1)");
  gdp->add_flag("--q-sweep", g_qsweep, "check Q-invariance of bounds (61)-(63)");
  gdp->add_option("--seed", g_seed, "seed for randomized checks");

  // lattice region | sim
  auto* lat = app.add_subcommand("lattice", "mod-lattice strategies");
  lat->require_subcommand(1);
  std::string lr_config, lr_out;
  int lr_rho = 101, lr_alpha0 = 101;
  auto* lreg = lat->add_subcommand("region", "Pareto frontier over (rho, alpha0)");
  lreg->add_option("--config", lr_config, "lattice config JSON");
  lreg->add_option("--rho-grid", lr_rho, "rho grid size");
  lreg->add_option("--alpha0-grid", lr_alpha0, "alpha0 grid size");
  lreg->add_option("--out", lr_out, "output CSV path");
  std::string ls_config, ls_out;
  int ls_decoder = 2;
  std::uint64_t ls_samples = 0, ls_seed = 0;
  unsigned ls_threads = 1;
  auto* lsim = lat->add_subcommand("sim", "Monte Carlo decoder simulation");
  lsim->add_option("--config", ls_config, "lattice config JSON");
  lsim->add_option("--decoder", ls_decoder, "1 or 2")->check(CLI::IsMember({1, 2}));
  lsim->add_option("--samples", ls_samples, "sample count override");
  lsim->add_option("--seed", ls_seed, "RNG seed");
  lsim->add_option("--threads", ls_threads, "worker threads");
  lsim->add_option("--out", ls_out, "output stats JSON path");

  // verify
  std::string v_suite;
  std::uint64_t v_seed = 0;
  auto* ver = app.add_subcommand("verify", "run a verification suite");
  ver->add_option("suite", v_suite, "lemma1 | q-invariance | lattice-identities | decoder2")
      ->required();
  ver->add_option("--seed", v_seed, "seed for randomized checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInput;
  }

  try {
    if (dmc->parsed()) return cmd_dmc_region(dmc_dist, dmc_theorem, dmc_fme, dmc_out);
    if (fme->parsed()) return cmd_fme(fme_in, fme_keep, fme_mode, fme_out);
    if (gdp->parsed())
      return cmd_gauss_dpc(g_channel, g_xi, g_gamma, g_out, g_svg, g_verify,
                           g_qsweep, g_seed);
    if (lreg->parsed()) return cmd_lattice_region(lr_config, lr_rho, lr_alpha0, lr_out);
    if (lsim->parsed())
      return cmd_lattice_sim(ls_config, ls_decoder, ls_samples, ls_seed, ls_threads,
                             ls_out);
    if (ver->parsed()) return cmd_verify(v_suite, v_seed);
  } catch (const prob::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitOracle;
  } catch (const poly::InfeasibleError& e) {
    std::cerr << "infeasible system: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}

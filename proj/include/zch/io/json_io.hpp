#pragma once

#include <array>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "zch/gauss/channel.hpp"
#include "zch/lattice/lattice.hpp"
#include "zch/lattice/sim.hpp"
#include "zch/poly/linear_system.hpp"
#include "zch/prob/random.hpp"
#include "zch/regions/rate_region.hpp"

namespace zch::io {

using nlohmann::json;

struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw FormatError(path + ": " + e.what());
  }
  return j;
}

inline void save_json_file(const std::string& path, const json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot open " + path + " for writing");
  out << j.dump(2) << "\n";
}

namespace detail {

// Flatten a nested JSON array with the given dimensions (row-major).
template <class T>
void flatten(const json& j, const std::vector<int>& dims, std::size_t level,
             std::vector<T>& out, const std::string& what) {
  if (level == dims.size()) {
    if (!j.is_number()) throw FormatError(what + ": expected a number");
    out.push_back(j.get<T>());
    return;
  }
  if (!j.is_array() || static_cast<int>(j.size()) != dims[level])
    throw FormatError(what + ": expected array of length " +
                      std::to_string(dims[level]) + " at depth " +
                      std::to_string(level));
  for (const auto& e : j) flatten(e, dims, level + 1, out, what);
}

template <class T>
std::vector<T> flat(const json& j, const std::vector<int>& dims,
                    const std::string& what) {
  std::vector<T> out;
  flatten(j, dims, 0, out, what);
  return out;
}

template <class T>
json nest(const std::vector<T>& flat, const std::vector<int>& dims,
          std::size_t level, std::size_t& pos) {
  if (level == dims.size()) return json(flat[pos++]);
  json arr = json::array();
  for (int i = 0; i < dims[level]; ++i) arr.push_back(nest(flat, dims, level + 1, pos));
  return arr;
}

template <class T>
json nest(const std::vector<T>& flat_vec, const std::vector<int>& dims) {
  std::size_t pos = 0;
  return nest(flat_vec, dims, 0, pos);
}

}  // namespace detail

// ---- JointDistribution: { "alphabets": {name:size}, "factors": {...} } ----

inline prob::Factors factors_from_json(const json& j) {
  if (!j.contains("alphabets") || !j.contains("factors"))
    throw FormatError("distribution JSON needs \"alphabets\" and \"factors\"");
  prob::Factors f;
  for (int i = 0; i < prob::kNumVars; ++i) {
    const std::string name(prob::kVarNames[i]);
    if (!j["alphabets"].contains(name))
      throw FormatError("missing alphabet size for " + name);
    f.sizes[i] = j["alphabets"][name].get<int>();
    if (f.sizes[i] < 1) throw FormatError("alphabet size for " + name + " must be >= 1");
  }
  const auto& fac = j["factors"];
  const int nS = f.sizes[0], nW = f.sizes[1], nU = f.sizes[3], nU1 = f.sizes[4],
            nU2 = f.sizes[5], nY1 = f.sizes[7], nY2 = f.sizes[8];
  auto get = [&](const char* key) -> const json& {
    if (!fac.contains(key)) throw FormatError(std::string("missing factor ") + key);
    return fac[key];
  };
  f.p_s = detail::flat<double>(get("p_s"), {nS}, "p_s");
  f.p_w_s = detail::flat<double>(get("p_w_s"), {nS, nW}, "p_w_s");
  f.x1_map = detail::flat<int>(get("x1_of_ws"), {nS, nW}, "x1_of_ws");
  f.p_u_s = detail::flat<double>(get("p_u_s"), {nS, nU}, "p_u_s");
  f.p_u1_us = detail::flat<double>(get("p_u1_us"), {nS, nU, nU1}, "p_u1_us");
  f.p_u2_us = detail::flat<double>(get("p_u2_us"), {nS, nU, nU2}, "p_u2_us");
  f.x2_map = detail::flat<int>(get("x2_of_uu1u2s"), {nS, nU, nU1, nU2}, "x2_of_uu1u2s");
  f.p_y_x1x2s = detail::flat<double>(get("p_y1y2_x1x2s"),
                                     {nS, f.sizes[2], f.sizes[6], nY1, nY2},
                                     "p_y1y2_x1x2s");
  return f;
}

inline json factors_to_json(const prob::Factors& f) {
  json j;
  for (int i = 0; i < prob::kNumVars; ++i)
    j["alphabets"][std::string(prob::kVarNames[i])] = f.sizes[i];
  const int nS = f.sizes[0], nW = f.sizes[1], nU = f.sizes[3], nU1 = f.sizes[4],
            nU2 = f.sizes[5];
  j["factors"]["p_s"] = detail::nest(f.p_s, {nS});
  j["factors"]["p_w_s"] = detail::nest(f.p_w_s, {nS, nW});
  j["factors"]["x1_of_ws"] = detail::nest(f.x1_map, {nS, nW});
  j["factors"]["p_u_s"] = detail::nest(f.p_u_s, {nS, nU});
  j["factors"]["p_u1_us"] = detail::nest(f.p_u1_us, {nS, nU, nU1});
  j["factors"]["p_u2_us"] = detail::nest(f.p_u2_us, {nS, nU, nU2});
  j["factors"]["x2_of_uu1u2s"] = detail::nest(f.x2_map, {nS, nU, nU1, nU2});
  j["factors"]["p_y1y2_x1x2s"] =
      detail::nest(f.p_y_x1x2s, {nS, f.sizes[2], f.sizes[6], f.sizes[7], f.sizes[8]});
  return j;
}

inline prob::JointDistribution distribution_from_json(const json& j,
                                                      double tolerance = 1e-9) {
  return factors_from_json(j).build(tolerance);
}

// ---- LinearSystem: { "vars", "rows":[{"a","rel","b","label"?}], "mode" } ----

inline poly::System<double> system_from_json(const json& j) {
  poly::System<double> sys;
  if (!j.contains("vars") || !j.contains("rows"))
    throw FormatError("system JSON needs \"vars\" and \"rows\"");
  sys.vars = j["vars"].get<std::vector<std::string>>();
  for (const auto& r : j["rows"]) {
    poly::Row<double> row;
    row.coeffs = r.at("a").get<std::vector<double>>();
    if (row.coeffs.size() != sys.vars.size())
      throw FormatError("row width does not match variable count");
    row.rhs = r.at("b").get<double>();
    const std::string rel = r.value("rel", "<=");
    if (rel == "<=")
      row.rel = poly::Relation::LessEq;
    else if (rel == "=")
      row.rel = poly::Relation::Eq;
    else
      throw FormatError("unknown relation " + rel);
    row.label = r.value("label", "");
    sys.rows.push_back(std::move(row));
  }
  return sys;
}

inline json system_to_json(const poly::System<double>& sys,
                           const std::string& mode = "float") {
  json j;
  j["vars"] = sys.vars;
  j["mode"] = mode;
  j["rows"] = json::array();
  for (const auto& r : sys.rows) {
    json row;
    row["a"] = r.coeffs;
    row["rel"] = r.rel == poly::Relation::Eq ? "=" : "<=";
    row["b"] = r.rhs;
    if (!r.label.empty()) row["label"] = r.label;
    j["rows"].push_back(std::move(row));
  }
  return j;
}

// ---- RateRegion: { "coords", "halfspaces", "vertices" } ----

inline json region_to_json(const regions::RateRegion& r) {
  json j;
  j["coords"] = r.coords;
  j["halfspaces"] = json::array();
  for (const auto& h : r.halfspaces)
    j["halfspaces"].push_back({{"a", h.coeffs}, {"b", h.rhs}, {"label", h.label}});
  j["vertices"] = r.vertices();
  return j;
}

inline regions::RateRegion region_from_json(const json& j) {
  regions::RateRegion r;
  r.coords = j.at("coords").get<std::vector<std::string>>();
  for (const auto& h : j.at("halfspaces"))
    r.halfspaces.push_back({h.at("a").get<std::vector<double>>(),
                            h.at("b").get<double>(), h.value("label", "")});
  return r;
}

// ---- Gaussian channel: discriminated by "form" -------------------------

inline gauss::GaussianZChannel channel_from_json(const json& j) {
  const std::string form = j.value("form", "");
  if (form == "raw") {
    gauss::RawChannel raw;
    raw.a11 = j.at("a11").get<double>();
    raw.a21 = j.at("a21").get<double>();
    raw.a22 = j.at("a22").get<double>();
    raw.n1 = j.at("N1").get<double>();
    raw.n2 = j.at("N2").get<double>();
    raw.q = j.at("Q").get<double>();
    raw.p1_star = j.at("P1star").get<double>();
    raw.p2_star = j.at("P2star").get<double>();
    return gauss::standardize(raw);
  }
  if (form == "standard") {
    gauss::StandardChannel st;
    st.a = j.at("a").get<double>();
    st.a1 = j.at("a1").get<double>();
    st.a2 = j.at("a2").get<double>();
    st.p1 = j.at("P1").get<double>();
    st.p2 = j.at("P2").get<double>();
    st.q = j.at("Q").get<double>();
    return gauss::from_standard(st);
  }
  throw FormatError("channel JSON needs \"form\": \"raw\" or \"standard\"");
}

inline json channel_to_json(const gauss::GaussianZChannel& ch) {
  json j;
  j["form"] = "standard";
  j["a"] = ch.standard.a;
  j["a1"] = ch.standard.a1;
  j["a2"] = ch.standard.a2;
  j["P1"] = ch.standard.p1;
  j["P2"] = ch.standard.p2;
  j["Q"] = ch.standard.q;
  return j;
}

// ---- Lattice simulation config / stats ---------------------------------

inline lattice::LatticeConfig lattice_config_from_json(const json& j) {
  lattice::LatticeConfig c;
  c.p1 = j.value("P1", c.p1);
  c.p2 = j.value("P2", c.p2);
  c.n1 = j.value("N1", c.n1);
  c.n2 = j.value("N2", c.n2);
  c.q = j.value("Q", c.q);
  c.a = j.value("a", c.a);
  c.rho = j.value("rho", c.rho);
  c.alpha0 = j.value("alpha0", c.alpha0);
  c.alpha1 = j.value("alpha1", c.alpha1);
  c.alpha2 = j.value("alpha2", c.alpha2);
  c.samples = j.value("samples", c.samples);
  c.seed = j.value("seed", c.seed);
  c.validate();
  return c;
}

inline json lattice_config_to_json(const lattice::LatticeConfig& c) {
  return json{{"P1", c.p1},     {"P2", c.p2},         {"N1", c.n1},
              {"N2", c.n2},     {"Q", c.q},           {"a", c.a},
              {"rho", c.rho},   {"alpha0", c.alpha0}, {"alpha1", c.alpha1},
              {"alpha2", c.alpha2}, {"samples", c.samples}, {"seed", c.seed}};
}

inline json run_stats_to_json(const lattice::LatticeRunStats& st) {
  json j;
  j["samples"] = st.samples;
  j["seed"] = st.seed;
  j["variances"] = json::array();
  bool pass = true;
  for (const auto& c : st.variance_checks) {
    const double r = c.ratio();
    const bool ok = r >= 0.99 && r <= 1.01;
    pass = pass && ok;
    j["variances"].push_back({{"name", c.name},
                              {"predicted", c.predicted},
                              {"empirical", c.empirical},
                              {"ratio", r},
                              {"pass", ok}});
  }
  j["corr_u_s"] = st.corr_u_s;
  j["corr_z02e_s"] = st.corr_z02e_s;
  j["max_identity_err_stage1"] = st.max_identity_err_stage1;
  j["max_identity_err_stage2"] = st.max_identity_err_stage2;
  j["ks_statistic"] = st.ks_statistic;
  j["ks_threshold"] = st.ks_threshold;
  j["residual_fraction_stage_a"] = st.residual_fraction_stage_a;
  j["residual_fraction_stage_b"] = st.residual_fraction_stage_b;
  const double corr_limit = 4.0 / std::sqrt(static_cast<double>(st.samples));
  const bool identities_ok =
      st.max_identity_err_stage1 <= 1e-12 && st.max_identity_err_stage2 <= 1e-12;
  const bool ks_ok = st.ks_threshold == 0.0 || st.ks_statistic <= st.ks_threshold;
  const bool corr_ok = std::abs(st.corr_u_s) < corr_limit &&
                       std::abs(st.corr_z02e_s) < corr_limit;
  j["pass"] = {{"variances", pass},
               {"identities", identities_ok},
               {"ks", ks_ok},
               {"correlations", corr_ok},
               {"all", pass && identities_ok && ks_ok && corr_ok}};
  return j;
}

}  // namespace zch::io

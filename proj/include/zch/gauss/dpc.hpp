#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "zch/gauss/channel.hpp"
#include "zch/prob/covariance.hpp"
#include "zch/regions/rate_region.hpp"

namespace zch::gauss {

// Costa coefficients plus the power split and the free U2 coefficient.
struct DpcParams {
  double xi = 1.0;     // power split, xi_bar = 1 - xi
  double alpha = 0.0;  // U = Ut + alpha*S
  double beta = 0.0;   // W = Wt + beta*S
  double gamma = 0.0;  // U2 = U2t + gamma*S
};

// alpha = a*a1*sqrt(xi*P2) / (1 + P1 + a^2 P2),
// beta  = a1*sqrt(P1)      / (1 + P1 + a^2 P2).
inline std::pair<double, double> costa_coefficients(const StandardChannel& ch,
                                                    double xi) {
  if (xi < 0.0 || xi > 1.0) throw std::invalid_argument("xi must lie in [0,1]");
  const double denom = 1.0 + ch.p1 + ch.a * ch.a * ch.p2;
  const double alpha = ch.a * ch.a1 * std::sqrt(xi * ch.p2) / denom;
  const double beta = ch.a1 * std::sqrt(ch.p1) / denom;
  return {alpha, beta};
}

inline DpcParams costa_params(const StandardChannel& ch, double xi, double gamma = 0.0) {
  auto [alpha, beta] = costa_coefficients(ch, xi);
  return {xi, alpha, beta, gamma};
}

// Joint Gaussian model over the base variables (Ut, Wt, U2t, S, Z1, Z2)
// and everything derived from them by linearity.
inline prob::CovarianceModel build_covariance(const StandardChannel& ch,
                                              const DpcParams& p) {
  if (ch.p1 < 0.0 || ch.p2 < 0.0 || ch.q < 0.0)
    throw std::invalid_argument("negative variance input");
  const double sp1 = std::sqrt(ch.p1);
  const double sxi = std::sqrt(p.xi * ch.p2);
  const double sxb = std::sqrt((1.0 - p.xi) * ch.p2);
  const std::vector<std::string> names = {"Ut", "Wt", "U2t", "S",  "Z1", "Z2", "U",
                                          "W",  "U2",  "X1",  "X2", "Y1", "Y2"};
  // rows of the linear map onto (Ut, Wt, U2t, S, Z1, Z2)
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(13, 6);
  L.block(0, 0, 6, 6).setIdentity();
  auto row = [&](int i, double ut, double wt, double u2t, double s, double z1,
                 double z2) { L.row(i) << ut, wt, u2t, s, z1, z2; };
  row(6, 1, 0, 0, p.alpha, 0, 0);                          // U
  row(7, 0, 1, 0, p.beta, 0, 0);                           // W
  row(8, 0, 0, 1, p.gamma, 0, 0);                          // U2
  row(9, 0, sp1, 0, 0, 0, 0);                              // X1
  row(10, sxi, 0, sxb, 0, 0, 0);                           // X2
  row(11, ch.a * sxi, sp1, ch.a * sxb, ch.a1, 1, 0);       // Y1
  row(12, sxi, 0, sxb, ch.a2, 0, 1);                       // Y2
  Eigen::VectorXd base_var(6);
  base_var << 1, 1, 1, ch.q, 1, 1;
  Eigen::MatrixXd cov = L * base_var.asDiagonal() * L.transpose();
  return prob::CovarianceModel(names, cov);
}

// Orthogonality residuals of the interference-cancelling auxiliaries, plus
// the three side-information mutual-information gaps they are meant to close.
struct Lemma1Report {
  double r_u, r_w;
  std::array<double, 3> mi_gaps;
};

inline Lemma1Report lemma1_residuals(const StandardChannel& ch, const DpcParams& p) {
  if (ch.a1 == 0.0)
    throw std::invalid_argument("lemma1_residuals: a1 = 0 leaves the residuals undefined");
  const double sp1 = std::sqrt(ch.p1);
  const double sxi = std::sqrt(p.xi * ch.p2);
  const double t_var = 1.0 + ch.p1 + ch.a * ch.a * ch.p2;  // E[T^2]
  Lemma1Report rep{};
  // T = sqrt(P1) Wt + a sqrt(xi P2) Ut + a sqrt(xib P2) U2t + Z1
  rep.r_u = ch.a * sxi - (p.alpha / ch.a1) * t_var;
  rep.r_w = sp1 - (p.beta / ch.a1) * t_var;
  if (ch.q == 0.0) {
    rep.mi_gaps = {0.0, 0.0, 0.0};  // degenerate S carries no information
    return rep;
  }
  const auto model = build_covariance(ch, p);
  auto gap = [&](std::vector<std::string> a, std::vector<std::string> c) {
    return prob::gaussian_mutual_information(model, a, {"Y1", "S"}, c) -
           prob::gaussian_mutual_information(model, a, {"Y1"}, c);
  };
  rep.mi_gaps[0] = gap({"U", "W"}, {});
  rep.mi_gaps[1] = gap({"U"}, {"W"});
  rep.mi_gaps[2] = gap({"W"}, {"U"});
  return rep;
}

struct DpcBounds {
  double b61, b62, b63, b64, b65;  // raw values; regions clamp at 0
};

namespace detail {

// Cross-covariance matrix of (Y2, U, U2) with the stated alpha/gamma; the
// published 3x3 uses alpha in the (1,3) entry where the model gives gamma.
inline Eigen::Matrix3d bound_matrix3(const StandardChannel& ch, const DpcParams& p) {
  const double sxi = std::sqrt(p.xi * ch.p2);
  const double sxb = std::sqrt((1.0 - p.xi) * ch.p2);
  Eigen::Matrix3d m;
  m << ch.p2 + ch.a2 * ch.a2 * ch.q + 1.0, sxi + p.alpha * ch.a2 * ch.q,
      sxb + p.alpha * ch.a2 * ch.q,  //
      sxi + p.alpha * ch.a2 * ch.q, 1.0 + p.alpha * p.alpha * ch.q,
      p.alpha * p.gamma * ch.q,  //
      sxb + p.alpha * ch.a2 * ch.q, p.alpha * p.gamma * ch.q,
      1.0 + p.gamma * p.gamma * ch.q;
  return m;
}

}  // namespace detail

inline DpcBounds dpc_bounds(const StandardChannel& ch, const DpcParams& p) {
  const double a2p = ch.a * ch.a * ch.p2;
  const double denom1 = ch.a * ch.a * (1.0 - p.xi) * ch.p2 + 1.0;
  DpcBounds b{};
  b.b61 = 0.5 * std::log2(1.0 + (ch.p1 + p.xi * a2p) / denom1);
  b.b62 = 0.5 * std::log2(1.0 + p.xi * a2p / denom1);
  b.b63 = 0.5 * std::log2(1.0 + ch.p1 / denom1);
  const Eigen::Matrix3d m3 = detail::bound_matrix3(ch, p);
  const Eigen::Matrix2d m2 = m3.topLeftCorner<2, 2>();
  const double det3 = m3.determinant();
  const double det2 = m2.determinant();
  if (!(det3 > 0.0) || !(det2 > 0.0)) {
    std::string msg = "non-positive determinant in rate bound matrix: det3=" +
                      std::to_string(det3) + " det2=" + std::to_string(det2);
    throw prob::NumericalError(msg);
  }
  b.b64 = 0.5 * std::log2(m3(0, 0) / det3);
  b.b65 = 0.5 * std::log2(det2 / det3);
  return b;
}

// Log-determinant route for the last two bounds: (64) is
// I(U,U2; Y2) - I(U,U2; S), (65) is I(U2; Y2 | U) - I(U2; S | U).
inline std::pair<double, double> dpc_bounds_mi_path(const StandardChannel& ch,
                                                    const DpcParams& p) {
  const auto model = build_covariance(ch, p);
  const double b64 =
      prob::gaussian_mutual_information(model, {"U", "U2"}, {"Y2"}) -
      prob::gaussian_mutual_information(model, {"U", "U2"}, {"S"});
  const double b65 =
      prob::gaussian_mutual_information(model, {"U2"}, {"Y2"}, {"U"}) -
      prob::gaussian_mutual_information(model, {"U2"}, {"S"}, {"U"});
  return {b64, b65};
}

inline regions::RateRegion dpc_region(const StandardChannel& ch, const DpcParams& p) {
  const DpcBounds b = dpc_bounds(ch, p);
  regions::RateRegion r;
  r.coords = {"R11", "R21", "R22"};
  r.add_bound({1, 1, 0}, b.b61, "(61)");
  r.add_bound({0, 1, 0}, b.b62, "(62)");
  r.add_bound({1, 0, 0}, b.b63, "(63)");
  r.add_bound({0, 1, 1}, b.b64, "(64)");
  r.add_bound({0, 0, 1}, b.b65, "(65)");
  return r;
}

struct SweepPoint {
  double xi, gamma;
  DpcBounds bounds;
};

struct SweepResult {
  std::vector<SweepPoint> points;
  // all vertices of all per-point regions
  std::vector<std::array<double, 3>> cloud;
  // coordinatewise non-dominated subset (the plotting boundary of the union)
  std::vector<std::array<double, 3>> frontier;
};

inline SweepResult dpc_region_union(const StandardChannel& ch,
                                    const std::vector<double>& xi_grid,
                                    const std::vector<double>& gamma_grid) {
  if (xi_grid.empty() || gamma_grid.empty())
    throw std::invalid_argument("empty sweep grid");
  SweepResult out;
  for (double xi : xi_grid)
    for (double gamma : gamma_grid) {
      const DpcParams p = costa_params(ch, xi, gamma);
      out.points.push_back({xi, gamma, dpc_bounds(ch, p)});
      for (const auto& v : dpc_region(ch, p).vertices())
        out.cloud.push_back({v[0], v[1], v[2]});
    }
  for (const auto& v : out.cloud) {
    bool dominated = false;
    for (const auto& w : out.cloud) {
      if (w[0] >= v[0] + 1e-12 && w[1] >= v[1] - 1e-12 && w[2] >= v[2] - 1e-12) {
        dominated = true;
      } else if (w[0] >= v[0] - 1e-12 && w[1] >= v[1] + 1e-12 && w[2] >= v[2] - 1e-12) {
        dominated = true;
      } else if (w[0] >= v[0] - 1e-12 && w[1] >= v[1] - 1e-12 && w[2] >= v[2] + 1e-12) {
        dominated = true;
      }
      if (dominated) break;
    }
    if (!dominated) out.frontier.push_back(v);
  }
  return out;
}

}  // namespace zch::gauss

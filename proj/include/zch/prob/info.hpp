#pragma once

#include <cmath>
#include <stdexcept>

#include "zch/prob/joint_distribution.hpp"
#include "zch/prob/variables.hpp"

namespace zch::prob {

enum class LogBase { Bits, Nats };

inline double log_of(double x, LogBase base) {
  return base == LogBase::Bits ? std::log2(x) : std::log(x);
}

// H(vars) with the 0 log 0 = 0 convention.
inline double entropy(const JointDistribution& dist, VarSet vars,
                      LogBase base = LogBase::Bits) {
  if (vars.empty()) throw std::invalid_argument("entropy: empty variable set");
  double h = 0.0;
  for (double p : dist.marginal(vars)) {
    if (p > 0.0) h -= p * log_of(p, base);
  }
  return h;
}

// I(a;b|c) = H(a,c) + H(b,c) - H(a,b,c) - H(c); values below 1e-12 in
// magnitude are reported as exactly 0.
inline double conditional_mutual_information(const JointDistribution& dist, VarSet a,
                                             VarSet b, VarSet c = {},
                                             LogBase base = LogBase::Bits) {
  if (!a.disjoint(b) || !a.disjoint(c) || !b.disjoint(c))
    throw std::invalid_argument("conditional_mutual_information: overlapping sets");
  if (a.empty() || b.empty())
    throw std::invalid_argument("conditional_mutual_information: empty set");
  double mi = entropy(dist, a | c, base) + entropy(dist, b | c, base) -
              entropy(dist, a | b | c, base);
  if (!c.empty()) mi -= entropy(dist, c, base);
  if (std::abs(mi) < 1e-12) mi = 0.0;
  return mi;
}

inline double mutual_information(const JointDistribution& dist, VarSet a, VarSet b,
                                 LogBase base = LogBase::Bits) {
  return conditional_mutual_information(dist, a, b, {}, base);
}

}  // namespace zch::prob

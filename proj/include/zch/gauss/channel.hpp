#pragma once

#include <cmath>
#include <stdexcept>

namespace zch::gauss {

// Raw-gain Gaussian Z channel parameters.
struct RawChannel {
  double a11 = 1.0, a21 = 1.0, a22 = 1.0;
  double n1 = 1.0, n2 = 1.0;  // noise variances
  double q = 0.0;             // interference variance
  double p1_star = 1.0, p2_star = 1.0;
};

// Standard form: unit direct gains, unit noise variances.
struct StandardChannel {
  double a = 1.0;   // crossover gain into Y1
  double a1 = 0.0;  // interference gain into Y1
  double a2 = 0.0;  // interference gain into Y2
  double p1 = 1.0, p2 = 1.0;
  double q = 0.0;
};

struct GaussianZChannel {
  RawChannel raw;
  StandardChannel standard;
};

// Scale each output to unit noise variance and unit direct gain.
inline GaussianZChannel standardize(const RawChannel& raw) {
  if (raw.n1 <= 0.0 || raw.n2 <= 0.0)
    throw std::invalid_argument("noise variances must be positive");
  if (raw.a22 == 0.0)
    throw std::invalid_argument("a22 = 0: crossover normalization undefined");
  GaussianZChannel ch;
  ch.raw = raw;
  ch.standard.a = (raw.a21 / raw.a22) * std::sqrt(raw.n2 / raw.n1);
  ch.standard.a1 = (raw.a11 + raw.a21) / std::sqrt(raw.n1);
  ch.standard.a2 = raw.a22 / std::sqrt(raw.n2);
  ch.standard.p1 = raw.a11 * raw.a11 * raw.p1_star / raw.n1;
  ch.standard.p2 = raw.a22 * raw.a22 * raw.p2_star / raw.n2;
  ch.standard.q = raw.q;
  return ch;
}

// A channel already in standard form, viewed through the raw-parameter
// round trip (gains 1 and a, unit noises).
inline GaussianZChannel from_standard(const StandardChannel& std_form) {
  GaussianZChannel ch;
  ch.standard = std_form;
  ch.raw = {1.0,          std_form.a, 1.0, 1.0, 1.0,
            std_form.q,   std_form.p1, std_form.p2};
  return ch;
}

}  // namespace zch::gauss

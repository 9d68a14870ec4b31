#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "zch/poly/fme.hpp"
#include "zch/poly/linear_system.hpp"

namespace zch::regions {

struct Halfspace {
  std::vector<double> coeffs;
  double rhs = 0.0;
  std::string label;
};

// Polyhedral rate region: halfspace list over named rate coordinates,
// always intersected with the nonnegative orthant.  Bounds from negative
// mutual-information differences are clamped to 0 at construction.
struct RateRegion {
  std::vector<std::string> coords;
  std::vector<Halfspace> halfspaces;

  void add_bound(std::vector<double> coeffs, double rhs, std::string label) {
    halfspaces.push_back({std::move(coeffs), std::max(rhs, 0.0), std::move(label)});
  }

  poly::System<double> to_system() const {
    poly::System<double> sys;
    sys.vars = coords;
    for (const Halfspace& h : halfspaces)
      sys.add_row(h.coeffs, h.rhs, poly::Relation::LessEq, h.label);
    for (std::size_t i = 0; i < coords.size(); ++i) {
      std::vector<double> c(coords.size(), 0.0);
      c[i] = -1.0;
      sys.add_row(std::move(c), 0.0, poly::Relation::LessEq, coords[i] + ">=0");
    }
    return sys;
  }

  std::vector<std::vector<double>> vertices(double tol = 1e-9) const {
    return poly::enumerate_vertices(to_system(), tol);
  }
};

// True iff every vertex of `inner` satisfies every halfspace of `outer`
// within tol.
inline bool region_contains(const RateRegion& outer, const RateRegion& inner,
                            double tol = 1e-9) {
  if (outer.coords != inner.coords)
    throw std::invalid_argument("region_contains: coordinate mismatch");
  for (const auto& v : inner.vertices(tol)) {
    for (const Halfspace& h : outer.halfspaces) {
      double lhs = 0.0;
      for (std::size_t i = 0; i < v.size(); ++i) lhs += h.coeffs[i] * v[i];
      if (lhs > h.rhs + tol) return false;
    }
    for (double x : v)
      if (x < -tol) return false;
  }
  return true;
}

}  // namespace zch::regions

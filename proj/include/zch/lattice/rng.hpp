#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace zch::lattice {

// Counter-based generator: every draw is a pure hash of
// (seed, stream, sample index, slot), so results are identical under any
// partitioning of the sample range.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t word(std::uint64_t stream, std::uint64_t index,
                     std::uint64_t slot) const {
    std::uint64_t h = mix(seed_ ^ 0x6a09e667f3bcc909ull);
    h = mix(h ^ mix(stream));
    h = mix(h ^ mix(index));
    h = mix(h ^ mix(slot));
    return h;
  }

  // uniform in [0,1)
  double uniform01(std::uint64_t stream, std::uint64_t index,
                   std::uint64_t slot = 0) const {
    return static_cast<double>(word(stream, index, slot) >> 11) * 0x1.0p-53;
  }

  // uniform over [-half, half)
  double uniform_centered(std::uint64_t stream, std::uint64_t index,
                          double half) const {
    return (uniform01(stream, index) - 0.5) * 2.0 * half;
  }

  // standard normal via Box-Muller on slots 0 and 1
  double normal(std::uint64_t stream, std::uint64_t index) const {
    double u1 = uniform01(stream, index, 0);
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    const double u2 = uniform01(stream, index, 1);
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_;
};

// Stream ids used by the simulators.
enum Stream : std::uint64_t {
  kStreamS = 1,
  kStreamZ1 = 2,
  kStreamZ2 = 3,
  kStreamD0 = 4,
  kStreamD1 = 5,
  kStreamD2 = 6,
  kStreamV0 = 7,
  kStreamV1 = 8,
  kStreamV2 = 9,
};

}  // namespace zch::lattice

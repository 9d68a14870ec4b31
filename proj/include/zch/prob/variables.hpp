#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace zch::prob {

// The nine random variables of the channel model, in canonical order.
enum class Var : int { S = 0, W, X1, U, U1, U2, X2, Y1, Y2 };

inline constexpr int kNumVars = 9;

inline constexpr std::array<std::string_view, kNumVars> kVarNames = {
    "S", "W", "X1", "U", "U1", "U2", "X2", "Y1", "Y2"};

inline std::string_view var_name(Var v) { return kVarNames[static_cast<int>(v)]; }

inline Var var_from_name(std::string_view name) {
  for (int i = 0; i < kNumVars; ++i) {
    if (kVarNames[i] == name) return static_cast<Var>(i);
  }
  throw std::invalid_argument("unknown variable name: " + std::string(name));
}

// Subset of the nine variables, stored as a bitmask.
class VarSet {
 public:
  constexpr VarSet() = default;
  constexpr VarSet(std::initializer_list<Var> vars) {
    for (Var v : vars) mask_ |= bit(v);
  }
  explicit VarSet(const std::vector<std::string>& names) {
    for (const auto& n : names) mask_ |= bit(var_from_name(n));
  }

  static constexpr VarSet all() { return from_mask((1u << kNumVars) - 1); }
  static constexpr VarSet from_mask(std::uint16_t m) {
    VarSet s;
    s.mask_ = m;
    return s;
  }

  constexpr bool contains(Var v) const { return (mask_ & bit(v)) != 0; }
  constexpr bool empty() const { return mask_ == 0; }
  constexpr std::uint16_t mask() const { return mask_; }
  constexpr int size() const {
    int n = 0;
    for (int i = 0; i < kNumVars; ++i)
      if (mask_ & (1u << i)) ++n;
    return n;
  }

  constexpr bool disjoint(VarSet o) const { return (mask_ & o.mask_) == 0; }

  constexpr VarSet operator|(VarSet o) const { return from_mask(mask_ | o.mask_); }
  constexpr VarSet operator&(VarSet o) const { return from_mask(mask_ & o.mask_); }
  constexpr bool operator==(const VarSet&) const = default;

  std::vector<Var> members() const {
    std::vector<Var> out;
    for (int i = 0; i < kNumVars; ++i)
      if (mask_ & (1u << i)) out.push_back(static_cast<Var>(i));
    return out;
  }

  std::string to_string() const {
    std::string s;
    for (Var v : members()) {
      if (!s.empty()) s += ",";
      s += var_name(v);
    }
    return s;
  }

 private:
  static constexpr std::uint16_t bit(Var v) {
    return static_cast<std::uint16_t>(1u << static_cast<int>(v));
  }
  std::uint16_t mask_ = 0;
};

}  // namespace zch::prob

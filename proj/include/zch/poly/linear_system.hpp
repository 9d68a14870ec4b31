#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace zch::poly {

using Rational = boost::multiprecision::cpp_rational;

enum class Relation { LessEq, Eq };

template <class T>
struct Row {
  std::vector<T> coeffs;
  T rhs{};
  Relation rel = Relation::LessEq;
  std::string label;
};

// Linear inequality system over named variables.  T is double or Rational.
template <class T>
struct System {
  std::vector<std::string> vars;
  std::vector<Row<T>> rows;

  int index_of(const std::string& name) const {
    for (std::size_t i = 0; i < vars.size(); ++i)
      if (vars[i] == name) return static_cast<int>(i);
    throw std::invalid_argument("unknown variable: " + name);
  }

  void add_row(std::vector<T> coeffs, T rhs, Relation rel = Relation::LessEq,
               std::string label = {}) {
    if (coeffs.size() != vars.size())
      throw std::invalid_argument("coefficient count mismatch");
    rows.push_back({std::move(coeffs), std::move(rhs), rel, std::move(label)});
  }

  // Expand equalities into inequality pairs; result has only LessEq rows.
  System normalized() const {
    System out;
    out.vars = vars;
    for (const Row<T>& r : rows) {
      out.rows.push_back({r.coeffs, r.rhs, Relation::LessEq, r.label});
      if (r.rel == Relation::Eq) {
        Row<T> neg{r.coeffs, -r.rhs, Relation::LessEq, r.label};
        for (T& c : neg.coeffs) c = -c;
        out.rows.push_back(std::move(neg));
      }
    }
    return out;
  }
};

template <class T>
struct ArithTraits;

template <>
struct ArithTraits<double> {
  static constexpr double default_tol = 1e-9;
  static double abs(double x) { return std::fabs(x); }
  static bool finite(double x) { return std::isfinite(x); }
  static double to_double(double x) { return x; }
  static double from_double(double x) { return x; }
};

template <>
struct ArithTraits<Rational> {
  static inline const Rational default_tol = Rational(0);
  static Rational abs(const Rational& x) { return x < 0 ? Rational(-x) : x; }
  static bool finite(const Rational&) { return true; }
  static double to_double(const Rational& x) { return static_cast<double>(x); }
  // Exact dyadic conversion.
  static Rational from_double(double x) { return Rational(x); }
};

template <class To, class From>
System<To> convert_system(const System<From>& sys) {
  System<To> out;
  out.vars = sys.vars;
  for (const auto& r : sys.rows) {
    Row<To> nr;
    nr.rhs = ArithTraits<To>::from_double(ArithTraits<From>::to_double(r.rhs));
    nr.rel = r.rel;
    nr.label = r.label;
    for (const auto& c : r.coeffs)
      nr.coeffs.push_back(ArithTraits<To>::from_double(ArithTraits<From>::to_double(c)));
    out.rows.push_back(std::move(nr));
  }
  return out;
}

}  // namespace zch::poly

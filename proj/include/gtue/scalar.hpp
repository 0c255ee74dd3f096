#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <charconv>
#include <cmath>
#include <concepts>
#include <string>
#include <string_view>

#include "gtue/errors.hpp"

namespace gtue {

/// Exact scalar used by rational mode.
using Rational = boost::multiprecision::mpq_rational;

/// Per-scalar policy: default tolerances, conversions and text form.
template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static double default_tol() { return 1e-9; }
  static double pmf_tol() { return 1e-12; }
  static double from_double(double v) { return v; }
  static double to_double(double v) { return v; }
  static double parse(std::string_view text);
  static std::string format(double v);
};

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static Rational default_tol() { return Rational(0); }
  static Rational pmf_tol() { return Rational(0); }
  /// Exact binary value of `v`.
  static Rational from_double(double v) { return Rational(v); }
  static double to_double(const Rational& v) { return v.convert_to<double>(); }
  static Rational parse(std::string_view text);
  static std::string format(const Rational& v);
  /// Rational with the same value as the shortest decimal that round-trips `v`.
  static Rational from_decimal_of(double v);
};

template <class S>
concept Scalar = requires { ScalarTraits<S>::exact; };

template <class S>
S abs_value(const S& v) {
  return v < S(0) ? S(-v) : v;
}

/// Shortest decimal text that round-trips the double.
std::string shortest_decimal(double v);

}  // namespace gtue

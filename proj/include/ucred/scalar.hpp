#pragma once

#include <cmath>

#include "ucred/rational.hpp"
#include "ucred/rational_function.hpp"

namespace ucred {

// Conversions used by code templated on the numeric mode.
template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static double from(const Rational& q) { return q.to_double(); }
  static bool is_zero(double x) { return x == 0.0; }
  static constexpr bool exact = false;
};

template <>
struct ScalarTraits<Rational> {
  static Rational from(const Rational& q) { return q; }
  static bool is_zero(const Rational& x) { return x.is_zero(); }
  static constexpr bool exact = true;
};

template <>
struct ScalarTraits<RationalFunction> {
  static RationalFunction from(const Rational& q) { return RationalFunction(q); }
  static bool is_zero(const RationalFunction& x) { return x.is_zero(); }
  static constexpr bool exact = true;
};

template <class S>
S from_rational(const Rational& q) {
  return ScalarTraits<S>::from(q);
}

template <class S>
bool scalar_is_zero(const S& x) {
  return ScalarTraits<S>::is_zero(x);
}

}  // namespace ucred

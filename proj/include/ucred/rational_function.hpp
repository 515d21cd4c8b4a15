#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ucred/laurent.hpp"

namespace ucred {

// Exact rational function in the Laurent variables, stored partially
// factored: value = num * prod_k F_k^{e_k} where each F_k is a normalized
// polynomial held in a process-wide intern table and e_k is any nonzero
// integer. Products merge exponent lists (so repeated sigma factors cancel
// without gcd computations); sums pull out the common power of each factor
// and expand only the leftovers.
class RationalFunction {
 public:
  using FactorId = std::uint32_t;
  using FactorList = std::vector<std::pair<FactorId, int>>;  // sorted by id

  RationalFunction() = default;
  RationalFunction(const LaurentPoly& p) : num_(p) {}  // NOLINT(google-explicit-constructor)
  RationalFunction(const Rational& c) : num_(c) {}     // NOLINT
  RationalFunction(long c) : num_(c) {}                // NOLINT
  RationalFunction(int c) : num_(c) {}                 // NOLINT

  // Wraps p as an opaque interned factor so later products/quotients cancel
  // it structurally. Use for tau-like polynomials that recur in many places.
  static RationalFunction factor(const LaurentPoly& p);
  static RationalFunction var(int v, int e = 1) { return RationalFunction(LaurentPoly::var(v, e)); }

  bool is_zero() const { return num_.is_zero(); }
  bool has_trivial_denominator() const;

  // Expanded forms; numerator() absorbs positive factor powers.
  LaurentPoly numerator() const;
  LaurentPoly denominator() const;
  const LaurentPoly& core_numerator() const { return num_; }
  const FactorList& factors() const { return fac_; }

  RationalFunction operator-() const;
  RationalFunction& operator+=(const RationalFunction& o);
  RationalFunction& operator-=(const RationalFunction& o);
  RationalFunction& operator*=(const RationalFunction& o);
  RationalFunction& operator/=(const RationalFunction& o);

  friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
  friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
  friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
  friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) { return (a - b).is_zero(); }
  friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }

  RationalFunction pow(int e) const;

  double evaluate(std::span<const double> x) const;
  // Throws SingularityError if a denominator factor vanishes.
  Rational evaluate(std::span<const Rational> x) const;
  RationalFunction substitute(int v, const Rational& value) const;

  // "num" or "(num)/(den)" with both parts in canonical polynomial text.
  std::string str() const;

 private:
  LaurentPoly num_;
  FactorList fac_;
};

std::ostream& operator<<(std::ostream& os, const RationalFunction& f);

RationalFunction derivative(const RationalFunction& f, int i);
RationalFunction euler_apply(const RationalFunction& f, int nvars);

// Exact quotient a/b when b divides a in the Laurent ring; false otherwise.
bool try_divide(const LaurentPoly& a, const LaurentPoly& b, LaurentPoly& quotient);

namespace factor_table {
std::size_t size();
const LaurentPoly& get(RationalFunction::FactorId id);
}  // namespace factor_table

}  // namespace ucred

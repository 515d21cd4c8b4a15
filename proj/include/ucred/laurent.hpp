#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ucred/rational.hpp"

namespace ucred {

// Number of variables the packed monomial key can hold. Index 0 is t_0;
// callers may reuse higher slots for auxiliary variables (spectral z,
// canonical q/p/s in symbolic tests).
inline constexpr int kMaxVars = 8;

// Laurent monomial t_0^{e_0} ... t_7^{e_7}, exponents in [-32767, 32767].
// Packed into one 128-bit key, 16 bits per variable with t_0 most
// significant, so integer order on keys is lexicographic order on exponent
// vectors and multiplication is key addition.
class Monomial {
 public:
  using Key = unsigned __int128;

  constexpr Monomial() : key_(bias_key()) {}

  static Monomial var(int v, int e = 1);
  static Monomial from_exponents(std::span<const int> exps);

  int exponent(int v) const {
    return static_cast<int>(static_cast<std::uint16_t>(key_ >> shift(v))) - kBias;
  }
  std::array<int, kMaxVars> exponents() const;
  int total_degree() const;
  bool is_one() const { return key_ == bias_key(); }
  // Highest variable index with a nonzero exponent, -1 for the unit monomial.
  int top_var() const;

  Monomial operator*(Monomial o) const { return Monomial(key_ + o.key_ - bias_key()); }
  Monomial operator/(Monomial o) const { return Monomial(key_ + bias_key() - o.key_); }
  Monomial inverse() const { return Monomial(bias_key() * 2 - key_); }
  // Multiplies by t_v^{delta}.
  Monomial shifted(int v, int delta) const;

  Key key() const { return key_; }
  friend bool operator==(Monomial a, Monomial b) { return a.key_ == b.key_; }
  friend bool operator<(Monomial a, Monomial b) { return a.key_ < b.key_; }
  friend bool operator>(Monomial a, Monomial b) { return a.key_ > b.key_; }

 private:
  static constexpr int kBias = 1 << 15;
  static constexpr int shift(int v) { return 16 * (kMaxVars - 1 - v); }
  static constexpr Key bias_key() {
    Key k = 0;
    for (int v = 0; v < kMaxVars; ++v) k |= static_cast<Key>(kBias) << shift(v);
    return k;
  }
  explicit constexpr Monomial(Key k) : key_(k) {}
  Key key_;
};

struct Term {
  Monomial mono;
  Rational coeff;
};

// Multivariate Laurent polynomial with exact rational coefficients.
// Terms are kept sorted by ascending monomial with no zero coefficients, so
// structural equality is mathematical equality.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(const Rational& c);  // NOLINT(google-explicit-constructor)
  LaurentPoly(long c) : LaurentPoly(Rational(c)) {}  // NOLINT
  LaurentPoly(int c) : LaurentPoly(Rational(c)) {}   // NOLINT
  LaurentPoly(Monomial m, const Rational& c);

  static LaurentPoly var(int v, int e = 1) { return LaurentPoly(Monomial::var(v, e), Rational(1)); }
  // Builds from arbitrary (unsorted, possibly repeated) terms.
  static LaurentPoly from_terms(std::vector<Term> terms);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  bool is_monomial() const { return terms_.size() == 1; }
  std::size_t size() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }
  Rational constant_term() const;
  // Largest monomial and its coefficient; requires nonzero.
  const Term& leading_term() const { return terms_.back(); }
  int top_var() const;
  bool depends_on(int v) const;

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const LaurentPoly& o);
  LaurentPoly& operator*=(const Rational& c);
  LaurentPoly& operator*=(Monomial m);

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(LaurentPoly a, const Rational& c) { return a *= c; }
  friend LaurentPoly operator*(const Rational& c, LaurentPoly a) { return a *= c; }
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b);

  LaurentPoly pow(unsigned e) const;
  // Exact division by a single term; throws if `divisor` is not a monomial.
  LaurentPoly div_monomial(const LaurentPoly& divisor) const;

  double evaluate(std::span<const double> x) const;
  Rational evaluate(std::span<const Rational> x) const;
  // Replaces t_v by the given value (exact).
  LaurentPoly substitute(int v, const Rational& value) const;

  // Canonical text form, e.g. "3/2*t0^2*t1^-1 - 1*t1". Round-trips exactly
  // through parse().
  std::string str() const;
  static LaurentPoly parse(std::string_view text);

  std::size_t hash() const;

 private:
  std::vector<Term> terms_;
};

std::ostream& operator<<(std::ostream& os, const LaurentPoly& p);

// Formal partial derivative with respect to t_i.
LaurentPoly derivative(const LaurentPoly& f, int i);
// Hirota bilinear derivative D_i f.g = (d_i f) g - f (d_i g).
LaurentPoly hirota(int i, const LaurentPoly& f, const LaurentPoly& g);
// Second order Hirota derivative D_i D_j f.g.
LaurentPoly hirota2(int i, int j, const LaurentPoly& f, const LaurentPoly& g);
// Euler operator sum_{i < nvars} t_i d/dt_i.
LaurentPoly euler_apply(const LaurentPoly& f, int nvars);

}  // namespace ucred

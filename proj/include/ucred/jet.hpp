#pragma once

#include <algorithm>
#include <vector>

#include "ucred/errors.hpp"
#include "ucred/rational.hpp"
#include "ucred/scalar.hpp"

namespace ucred {

// Exact first-order jet: a value and its gradient in a fixed set of
// directions. An empty gradient stands for a constant.
class Jet {
 public:
  Jet() = default;
  Jet(int v) : v_(v) {}
  Jet(const Rational& v) : v_(v) {}
  Jet(const Rational& v, std::vector<Rational> d) : v_(v), d_(std::move(d)) {}

  const Rational& value() const { return v_; }
  Rational d(std::size_t k) const { return k < d_.size() ? d_[k] : Rational(); }
  std::size_t dirs() const { return d_.size(); }

  Jet operator-() const {
    Jet r(-v_);
    for (const auto& x : d_) r.d_.push_back(-x);
    return r;
  }
  Jet& operator+=(const Jet& o) { return *this = *this + o; }
  Jet& operator-=(const Jet& o) { return *this = *this - o; }
  Jet& operator*=(const Jet& o) { return *this = *this * o; }
  Jet& operator/=(const Jet& o) { return *this = *this / o; }

  friend Jet operator+(const Jet& a, const Jet& b) { return combine(a, b, a.v_ + b.v_, Rational(1), Rational(1)); }
  friend Jet operator-(const Jet& a, const Jet& b) { return combine(a, b, a.v_ - b.v_, Rational(1), Rational(-1)); }
  friend Jet operator*(const Jet& a, const Jet& b) { return combine(a, b, a.v_ * b.v_, b.v_, a.v_); }
  friend Jet operator/(const Jet& a, const Jet& b) {
    if (b.v_.is_zero()) throw DegenerateError("jet division by zero");
    Rational inv = Rational(1) / b.v_;
    return combine(a, b, a.v_ * inv, inv, -a.v_ * inv * inv);
  }
  friend bool operator==(const Jet& a, const Jet& b) {
    if (a.v_ != b.v_) return false;
    for (std::size_t k = 0; k < std::max(a.dirs(), b.dirs()); ++k)
      if (a.d(k) != b.d(k)) return false;
    return true;
  }

 private:
  // value with gradient ca * da + cb * db
  static Jet combine(const Jet& a, const Jet& b, Rational v, const Rational& ca, const Rational& cb) {
    Jet r(std::move(v));
    std::size_t n = std::max(a.dirs(), b.dirs());
    r.d_.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      if (k < a.d_.size()) r.d_[k] += ca * a.d_[k];
      if (k < b.d_.size()) r.d_[k] += cb * b.d_[k];
    }
    return r;
  }

  Rational v_;
  std::vector<Rational> d_;
};

template <>
struct ScalarTraits<Jet> {
  static Jet from(const Rational& q) { return Jet(q); }
  static bool is_zero(const Jet& x) { return x.value().is_zero(); }
  static constexpr bool exact = true;
};

}  // namespace ucred

#include "ucred/rational.hpp"

#include <ostream>

#include "ucred/errors.hpp"

namespace ucred {

Rational::Rational(long num, long den) : v_(num, den) {
  if (den == 0) throw PreconditionError("Rational: zero denominator");
  v_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  while (!s.empty() && s.front() == ' ') s.erase(s.begin());
  while (!s.empty() && s.back() == ' ') s.pop_back();
  if (s.empty()) throw ConfigError("empty rational literal");
  if (s.front() == '+') s.erase(s.begin());
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw ConfigError("malformed rational literal '" + std::string(text) + "'");
  if (q.get_den() == 0) throw ConfigError("zero denominator in '" + std::string(text) + "'");
  q.canonicalize();
  return Rational(q);
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw PreconditionError("Rational: division by zero");
  v_ /= o.v_;
  return *this;
}

std::size_t Rational::hash() const {
  // Low limbs are enough to separate coefficients in practice.
  std::size_t h = std::hash<long>{}(mpz_get_si(v_.get_num_mpz_t()));
  h ^= std::hash<long>{}(mpz_get_si(v_.get_den_mpz_t())) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  h ^= static_cast<std::size_t>(mpz_size(v_.get_num_mpz_t())) << 1;
  return h;
}

Rational abs(const Rational& q) { return q.sign() < 0 ? -q : q; }

Rational pow(const Rational& q, int e) {
  if (e < 0) return pow(Rational(1) / q, -e);
  Rational r(1), b = q;
  while (e > 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.str(); }

}  // namespace ucred

#include <random>

#include "doctest.h"
#include "test_util.hpp"
#include "ucred/errors.hpp"
#include "ucred/laurent.hpp"
#include "ucred/rational_function.hpp"

using namespace ucred;
using testutil::random_poly;

namespace {
const LaurentPoly t0 = LaurentPoly::var(0), t1 = LaurentPoly::var(1), t2 = LaurentPoly::var(2);
}

TEST_CASE("rational parsing and canonical form") {
  CHECK(Rational::parse("6/4") == Rational(3, 2));
  CHECK(Rational::parse(" -2 ") == Rational(-2));
  CHECK(Rational::parse("+5/10").str() == "1/2");
  CHECK_THROWS_AS(Rational::parse("1/0"), ConfigError);
  CHECK_THROWS_AS(Rational::parse("abc"), ConfigError);
  CHECK(Rational(3, -6).str() == "-1/2");
}

TEST_CASE("derivative") {
  CHECK(derivative(t1 * t1, 1) == Rational(2) * t1);
  CHECK(derivative(LaurentPoly::var(1, -1), 1) == -LaurentPoly::var(1, -2));
  CHECK(derivative(LaurentPoly(5), 0).is_zero());
  LaurentPoly a = t1 * t2, b = t1 + t2;
  LaurentPoly expanded = t1 * t1 * t2 + t1 * t2 * t2;
  CHECK(derivative(a * b, 1) == derivative(expanded, 1));
  CHECK(derivative(a * b, 1) == derivative(a, 1) * b + a * derivative(b, 1));
}

TEST_CASE("hirota derivative") {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 20; ++k) {
    LaurentPoly f = random_poly(rng, 3, 5);
    CHECK(hirota(1, f, f).is_zero());
  }
  CHECK(hirota(1, t1, LaurentPoly(1)) == LaurentPoly(1));
  CHECK(hirota(1, t1 * t1, t1) == t1 * t1);
  // D_i D_j f.f = 2 (f f_ij - f_i f_j)
  LaurentPoly f = t0 * t1 + Rational(3) * t1 * t1 * LaurentPoly::var(0, -1);
  LaurentPoly lhs = hirota2(0, 1, f, f);
  LaurentPoly rhs = Rational(2) * (f * derivative(derivative(f, 0), 1) - derivative(f, 0) * derivative(f, 1));
  CHECK(lhs == rhs);
}

TEST_CASE("euler operator") {
  CHECK(euler_apply(t0 * t1, 3) == Rational(2) * t0 * t1);
  CHECK(euler_apply(t1 * LaurentPoly::var(2, -1), 3).is_zero());
  CHECK(euler_apply(LaurentPoly(7), 3).is_zero());
}

TEST_CASE("canonical text form round trip") {
  LaurentPoly p = LaurentPoly::parse("3/2*t0^2*t1^-1");
  CHECK(p.str() == "3/2*t0^2*t1^-1");
  CHECK(LaurentPoly().str() == "0");
  CHECK((t0 - t1).str() == "-1*t1 + 1*t0");
  CHECK(LaurentPoly::parse("-1*t1 + 1*t0") == t0 - t1);
  CHECK(LaurentPoly::parse("1/3 - 2*t2^-3*t4") .str() == "-2*t2^-3*t4 + 1/3");
  std::mt19937_64 rng(5);
  for (int k = 0; k < 200; ++k) {
    LaurentPoly q = random_poly(rng, 4, 6, 3);
    CHECK(LaurentPoly::parse(q.str()) == q);
    CHECK(LaurentPoly::parse(q.str()).str() == q.str());
  }
  CHECK_THROWS_AS(LaurentPoly::parse("2*x1"), ConfigError);
  CHECK_THROWS_AS(LaurentPoly::parse("2*t1^a"), ConfigError);
}

TEST_CASE("property: ring axioms on random triples") {
  std::mt19937_64 rng(17);
  for (int k = 0; k < 1000; ++k) {
    LaurentPoly a = random_poly(rng, 3, 3), b = random_poly(rng, 3, 3), c = random_poly(rng, 3, 3);
    REQUIRE((a * b) * c == a * (b * c));
    REQUIRE(a * (b + c) == a * b + a * c);
    REQUIRE((a + b) + c == a + (b + c));
    REQUIRE(a * b == b * a);
    REQUIRE((a - a).is_zero());
  }
}

TEST_CASE("property: euler operator is a derivation") {
  std::mt19937_64 rng(19);
  for (int k = 0; k < 200; ++k) {
    LaurentPoly f = random_poly(rng, 3, 4), g = random_poly(rng, 3, 4);
    CHECK(euler_apply(f * g, 3) == euler_apply(f, 3) * g + f * euler_apply(g, 3));
  }
}

TEST_CASE("evaluation") {
  LaurentPoly p = LaurentPoly::parse("3/2*t0^2*t1^-1 + 1");
  std::vector<Rational> x{Rational(2), Rational(3)};
  CHECK(p.evaluate(std::span<const Rational>(x)) == Rational(3));
  std::vector<double> xd{2.0, 3.0};
  CHECK(p.evaluate(std::span<const double>(xd)) == doctest::Approx(3.0));
  CHECK(p.substitute(0, Rational(2)) == LaurentPoly::parse("6*t1^-1 + 1"));
}

TEST_CASE("exact division") {
  std::mt19937_64 rng(23);
  for (int k = 0; k < 100; ++k) {
    LaurentPoly a = random_poly(rng, 3, 4), b = random_poly(rng, 3, 3);
    if (b.is_zero()) continue;
    LaurentPoly q;
    REQUIRE(try_divide(a * b, b, q));
    CHECK(q == a);
  }
  LaurentPoly q;
  CHECK_FALSE(try_divide(t0 * t0 + LaurentPoly(1), t0 + LaurentPoly(1), q));
}

TEST_CASE("rational functions") {
  RationalFunction s = RationalFunction::factor(t0 + t1), u = RationalFunction::factor(t0 - t1);
  RationalFunction x = s / u;
  CHECK(x * u == s);
  CHECK((x * u / s) == RationalFunction(1));
  CHECK((x - x).is_zero());
  CHECK(RationalFunction(x.numerator()) / RationalFunction(x.denominator()) == x);
  // quotient rule oracle
  LaurentPoly n = t0 * t0 + t1, d = t0 - Rational(3) * t1;
  RationalFunction f = RationalFunction(n) / RationalFunction(d);
  RationalFunction oracle = RationalFunction(derivative(n, 0) * d - n * derivative(d, 0)) / RationalFunction(d * d);
  CHECK(derivative(f, 0) == oracle);
  std::vector<Rational> pt{Rational(2), Rational(5)};
  CHECK(f.evaluate(std::span<const Rational>(pt)) == Rational(9, -13));
  CHECK_THROWS_AS(RationalFunction(1) / RationalFunction(), PreconditionError);
}

TEST_CASE("property: rational function equality by cross multiplication") {
  std::mt19937_64 rng(29);
  for (int k = 0; k < 200; ++k) {
    LaurentPoly p = random_poly(rng, 3, 3), q = random_poly(rng, 3, 3), r = random_poly(rng, 3, 2);
    if (q.is_zero() || r.is_zero()) continue;
    RationalFunction x = RationalFunction(p * r) / RationalFunction(q * r);
    RationalFunction y = RationalFunction(p) / RationalFunction(q);
    bool cross = (x.numerator() * y.denominator() - y.numerator() * x.denominator()).is_zero();
    CHECK(cross);
    CHECK(x == y);
    RationalFunction z = RationalFunction(p + LaurentPoly(1)) / RationalFunction(q);
    bool cross_z = (z.numerator() * y.denominator() - y.numerator() * z.denominator()).is_zero();
    CHECK(cross_z == (z == y));
    CHECK_FALSE(z == y);
  }
}

TEST_CASE("rational function sums keep common factors") {
  RationalFunction s = RationalFunction::factor(t0 + t1);
  RationalFunction a = RationalFunction(t0) / s, b = RationalFunction(t1) / s;
  CHECK(a + b == RationalFunction(1));
  CHECK((a + b).evaluate(std::span<const double>(std::vector<double>{0.3, 0.9})) == doctest::Approx(1.0));
}

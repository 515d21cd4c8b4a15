#include <random>

#include "doctest.h"
#include "test_util.hpp"
#include "ucred/errors.hpp"
#include "ucred/painleve.hpp"

using namespace ucred;
using testutil::random_nonzero;
using testutil::random_rational;

namespace {

ParameterSet random_params(std::mt19937_64& rng, int L, int N) {
  ParameterSet ps;
  for (int i = 0; i <= N; ++i) ps.theta.push_back(random_nonzero(rng));
  Rational se, sk;
  for (int n = 0; n + 1 < L; ++n) {
    ps.e.push_back(random_rational(rng));
    ps.kappa.push_back(random_rational(rng));
    se += ps.e.back();
    sk += ps.kappa.back();
  }
  ps.e.push_back(Rational(L - 1, 2) - se);
  ps.kappa.push_back(ps.theta_sum() - sk);
  return ps;
}

PhasePoint<Rational> random_point(std::mt19937_64& rng, int L, int N) {
  PhasePoint<Rational> pt(L, N);
  for (int i = 0; i < N; ++i) pt.s[i] = Rational(2 * i + 5, i + 2) + Rational(i);
  for (auto& q : pt.q) q = random_nonzero(rng);
  for (auto& p : pt.p) p = random_nonzero(rng);
  return pt;
}

}  // namespace

TEST_CASE("dictionary satisfies a0 + a1 + 2 a2 + a3 + a4 = 1") {
  std::mt19937_64 rng(1);
  for (int L = 2; L <= 4; ++L)
    for (int trial = 0; trial < 10; ++trial) {
      ParameterSet ps = random_params(rng, L, 1);
      for (int n = 1; n < L; ++n) {
        PviParams a = pvi_dictionary(ps, n);
        CHECK(a[0] + a[1] + Rational(2) * a[2] + a[3] + a[4] == Rational(1));
      }
    }
}

TEST_CASE("Hamiltonian equals the coupled Painleve VI form identically") {
  std::mt19937_64 rng(2);
  for (int L = 2; L <= 4; ++L)
    for (int trial = 0; trial < 3; ++trial) {
      CAPTURE(L);
      ParameterSet ps = random_params(rng, L, 1);
      CHECK(pvi_symbolic_residual(ps).is_zero());
    }
}

TEST_CASE("property: pointwise agreement and a perturbed negative control") {
  std::mt19937_64 rng(3);
  for (int L = 2; L <= 4; ++L)
    for (int trial = 0; trial < 20; ++trial) {
      ParameterSet ps = random_params(rng, L, 1);
      PhasePoint<Rational> pt = random_point(rng, L, 1);
      CHECK(pvi_residual(ps, pt) == Rational(0));
      ParameterSet bad = ps;
      bad.kappa[0] += Rational(1, 2);
      bad.kappa[1] -= Rational(1, 2);
      CHECK(hamiltonian(ps, pt, 1) != coupled_pvi_hamiltonian(bad, pt));
    }
}

TEST_CASE("interchanged variables: Q P = -q p and the inverse round trip") {
  std::mt19937_64 rng(4);
  for (int N = 1; N <= 3; ++N)
    for (int trial = 0; trial < 10; ++trial) {
      ParameterSet ps = random_params(rng, 2, N);
      PhasePoint<Rational> pt = random_point(rng, 2, N);
      GarnierPoint<Rational> g = garnier_transform(ps, pt);
      for (int i = 1; i <= N; ++i) CHECK(g.point.Q(i, 1) * g.point.P(i, 1) == -pt.Q(i, 1) * pt.P(i, 1));
      PhasePoint<Rational> back = garnier_inverse(ps, g.point);
      CHECK(back.q == pt.q);
      CHECK(back.p == pt.p);
    }
}

TEST_CASE("transformed Hamiltonian matches the displayed form up to functions of s") {
  std::mt19937_64 rng(5);
  for (int N = 1; N <= 3; ++N) {
    CAPTURE(N);
    ParameterSet ps = random_params(rng, 2, N);
    std::vector<Rational> s;
    for (int i = 0; i < N; ++i) s.push_back(Rational(7 + 4 * i, 3 + i));
    for (int i = 1; i <= N; ++i)
      for (const auto& d : garnier_residual_partials(ps, s, i)) CHECK(d.is_zero());
  }
}

TEST_CASE("negative control: a wrong kappa in the displayed form is detected") {
  std::mt19937_64 rng(6);
  ParameterSet ps = random_params(rng, 2, 2);
  PhasePoint<Rational> QP = random_point(rng, 2, 2);
  PhasePoint<Rational> pt = garnier_inverse(ps, QP);
  ParameterSet bad = ps;
  bad.kappa[1] += Rational(1);
  bad.kappa[0] -= Rational(1);
  // evaluate s(s-1)(Htilde - form) at two Q values; the difference must vanish
  // for the right constants only
  auto defect = [&](const ParameterSet& form) {
    PhasePoint<Rational> QP2 = QP;
    QP2.Q(1, 1) += Rational(1, 3);
    PhasePoint<Rational> pt2 = garnier_inverse(ps, QP2);
    const Rational& s = QP.s[0];
    auto gap = [&](const PhasePoint<Rational>& a, const PhasePoint<Rational>& qp) {
      return s * (s - Rational(1)) * (hamiltonian(ps, a, 1) - a.Q(1, 1) * a.P(1, 1) / s) - garnier_polynomial(form, qp, 1);
    };
    return gap(pt, QP) - gap(pt2, QP2);
  };
  CHECK(defect(ps) == Rational(0));
  CHECK(defect(bad) != Rational(0));
}

TEST_CASE("preconditions") {
  std::mt19937_64 rng(7);
  ParameterSet p22 = random_params(rng, 2, 2), p31 = random_params(rng, 3, 1);
  CHECK_THROWS_AS(pvi_dictionary(p22), PreconditionError);
  CHECK_THROWS_AS(pvi_dictionary(p31, 3), PreconditionError);
  CHECK_THROWS_AS(pvi_symbolic_residual(p22), PreconditionError);
  CHECK_THROWS_AS(garnier_residual_partials(p31, {Rational(3)}, 1), PreconditionError);
  CHECK_THROWS_AS(garnier_residual_partials(p22, {Rational(3)}, 1), PreconditionError);
  PhasePoint<Rational> pt(2, 1);
  pt.s[0] = Rational(3);
  ParameterSet p21 = random_params(rng, 2, 1);
  // p_1^(0) = kappa_1 - q p; Q = 0 when p = 0
  pt.Q(1, 1) = Rational(1);
  pt.P(1, 1) = Rational(0);
  CHECK_THROWS_AS(garnier_transform(p21, pt), SingularityError);
}

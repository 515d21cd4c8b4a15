#include <random>

#include "doctest.h"
#include "test_util.hpp"
#include "ucred/canonical.hpp"
#include "ucred/errors.hpp"
#include "ucred/lax.hpp"

using namespace ucred;
using testutil::random_nonzero;
using testutil::random_rational;

namespace {

SubstitutionContext ctx_of(int L, std::vector<Rational> theta) {
  return SubstitutionContext{L, static_cast<int>(theta.size()) - 1, std::move(theta)};
}

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
  for (int i = 0; i < N; ++i) pt.s[i] = Rational(3 * i + 7, 2) + Rational(i);
  for (auto& q : pt.q) q = random_nonzero(rng);
  for (auto& p : pt.p) p = random_rational(rng);
  return pt;
}

bool all_zero(const std::vector<Rational>& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

}  // namespace

TEST_CASE("accessory parameter counts") {
  CHECK(accessory_count(spectral_type(2, 1)) == 2);
  CHECK(accessory_count(spectral_type(3, 2)) == 8);
  for (int L = 2; L <= 5; ++L)
    for (int N = 1; N <= 3; ++N) CHECK(accessory_count(spectral_type(L, N)) == 2 * N * (L - 1));
  CHECK(accessory_count({{1, 1}, {1, 1}, {1, 1}, {1, 1}}) == 2);
  CHECK_THROWS_AS(accessory_count({{1, 1}, {1, 1}}), ConfigError);
  CHECK_THROWS_AS(accessory_count({{1, 1}, {2, 1}, {1, 1}}), ConfigError);
  CHECK_THROWS_AS(accessory_count({{2, 0}, {1, 1}, {1, 1}}), ConfigError);
}

TEST_CASE("characteristic polynomial against a hand-computed case") {
  Mat<Rational> a(2, 2);
  a << Rational(1), Rational(2), Rational(3), Rational(4);
  auto cp = characteristic_polynomial(a);
  // lambda^2 - 5 lambda - 2
  CHECK(cp == std::vector<Rational>{Rational(-2), Rational(-5), Rational(1)});
  CHECK(poly_from_roots({Rational(1), Rational(-2)}) == std::vector<Rational>{Rational(-2), Rational(1), Rational(1)});
}

TEST_CASE("property: qp-gauge residues have the prescribed local exponents") {
  std::mt19937_64 rng(7);
  for (auto [L, N] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}, {3, 2}}) {
    for (int trial = 0; trial < 10; ++trial) {
      ParameterSet ps = random_params(rng, L, N);
      PhasePoint<Rational> pt = random_point(rng, L, N);
      LaxData<Rational> lax = build_lax_from_point(ps, pt);
      REQUIRE(lax.A.size() == static_cast<std::size_t>(N + 3));
      for (int i = 0; i <= N; ++i) {
        Rational cb;
        for (int n = 0; n < L; ++n) cb += lax.c[i][n] * lax.b[i][n];
        CHECK(cb == -ps.theta[i]);
        CHECK(all_zero(rank_one_minors(lax.A[i])));
      }
      CHECK(riemann_scheme(lax).pass());
      CHECK(all_zero(lemma_trace_residuals(ps, pt)));
      for (int i = 1; i <= N; ++i) CHECK(trace_hamiltonian(lax, i) == hamiltonian(ps, pt, i));
    }
  }
}

TEST_CASE("v-gauge data of the trivial grid") {
  auto th = testutil::theta_pool(2);
  SigmaFamily fam(build_sigma_grid({0, 0}, {0, 0}, ctx_of(2, th)));
  LaxData<RationalFunction> lax = build_lax_from_sigma(fam);
  CHECK(lax.gauge == Gauge::v);
  for (int i = 0; i <= 1; ++i) {
    RationalFunction cb;
    for (int n = 0; n < 2; ++n) cb += lax.c[i][n] * lax.b[i][n];
    CHECK(cb == RationalFunction(-th[i]));
  }
  CHECK(all_pass(check_lax_structure(lax)));
  CHECK(riemann_scheme(lax).pass());
}

TEST_CASE("v-gauge zero curvature and Schlesinger equations") {
  struct Case {
    CoreIndex nu, nup;
    int N;
  };
  for (const auto& c : std::vector<Case>{{{0, 1}, {1, 0}, 1}, {{0, 1, 0}, {1, 0, 0}, 1}, {{0, 1}, {1, 0}, 2}}) {
    int L = static_cast<int>(c.nu.size());
    SigmaFamily fam(build_sigma_grid(c.nu, c.nup, ctx_of(L, testutil::theta_pool(c.N + 1))));
    LaxData<RationalFunction> lax = build_lax_from_sigma(fam);
    CHECK(all_pass(check_lax_structure(lax)));
    CHECK(riemann_scheme(lax).pass());
    for (int i = 0; i <= c.N; ++i) {
      CHECK(zero_curvature_residual(lax, i).pass);
      CHECK(zero_curvature_residual(lax, i, {Rational(2, 7), Rational(-5, 3)}).pass);
    }
    CHECK(all_pass(schlesinger_residual(lax)));
  }
}

TEST_CASE("negative control: wrong residue breaks zero curvature") {
  SigmaFamily fam(build_sigma_grid({0, 1}, {1, 0}, ctx_of(2, testutil::theta_pool(2))));
  LaxData<RationalFunction> lax = build_lax_from_sigma(fam);
  lax.A[1](0, 0) += RationalFunction(Rational(1, 3));
  bool any = false;
  for (int i = 0; i <= 1; ++i) any = any || !zero_curvature_residual(lax, i).pass;
  CHECK(any);
}

TEST_CASE("gauge invariants agree between v-gauge and qp-gauge") {
  SigmaFamily fam(build_sigma_grid({0, 1}, {1, 0}, ctx_of(2, testutil::theta_pool(3))));
  LaxData<RationalFunction> v = build_lax_from_sigma(fam);
  CanonicalSolution sol = canonical_from_sigma(fam);
  std::vector<Rational> t{Rational(3, 2), Rational(11, 5)};
  LaxData<Rational> qp = build_lax_from_point(sol.params, evaluate_solution(sol.point, t));
  std::vector<Rational> x{Rational(1), t[0], t[1], Rational(0)};
  for (int i = 0; i <= 4; ++i)
    for (int j = 0; j <= 4; ++j) {
      CAPTURE(i);
      CAPTURE(j);
      CHECK(trace_of_product(v.A[i], v.A[j]).evaluate(x) == trace_of_product(qp.A[i], qp.A[j]));
    }
}

TEST_CASE("preconditions") {
  std::mt19937_64 rng(8);
  ParameterSet ps = random_params(rng, 2, 1);
  LaxData<Rational> lax = build_lax_from_point(ps, random_point(rng, 2, 1));
  CHECK_THROWS_AS(trace_hamiltonian(lax, 0), PreconditionError);
  CHECK_THROWS_AS(trace_hamiltonian(lax, 2), PreconditionError);
  SigmaFamily fam(build_sigma_grid({0, 1}, {1, 0}, ctx_of(2, testutil::theta_pool(2))));
  LaxData<RationalFunction> v = build_lax_from_sigma(fam);
  CHECK_THROWS_AS(deformation_matrix(v, 2), PreconditionError);
}

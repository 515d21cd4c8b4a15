#include <random>

#include "doctest.h"
#include "test_util.hpp"
#include "ucred/canonical.hpp"
#include "ucred/errors.hpp"
#include "ucred/symmetry.hpp"

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
  for (int i = 0; i < N; ++i) pt.s[i] = Rational(5 * i + 7, 3) + Rational(i);
  for (auto& q : pt.q) q = random_nonzero(rng);
  for (auto& p : pt.p) p = random_nonzero(rng);
  return pt;
}

Generator gen(Generator::Kind k, int a = 0, int b = 0) { return Generator{k, a, b}; }

}  // namespace

TEST_CASE("word parsing") {
  SymmetryWord w = parse_word("r0,r1',pi,rho,eta2,zeta01,iota,phi");
  REQUIRE(w.size() == 8);
  CHECK(w[0] == gen(Generator::r, 0));
  CHECK(w[1] == gen(Generator::r_prime, 1));
  CHECK(w[4] == gen(Generator::eta, 2));
  CHECK(w[5] == gen(Generator::zeta, 0, 1));
  CHECK(word_str(w) == "r0,r1',pi,rho,eta2,zeta01,iota,phi");
  CHECK(parse_word(word_str(w)) == w);
  CHECK_THROWS_AS(parse_word("r0,sigma"), ConfigError);
  CHECK_THROWS_AS(parse_word("r"), ConfigError);
}

TEST_CASE("generator availability") {
  CHECK_THROWS_AS(validate_generator(gen(Generator::phi), 2, 2), PreconditionError);
  CHECK_NOTHROW(validate_generator(gen(Generator::phi), 3, 1));
  CHECK_THROWS_AS(validate_generator(gen(Generator::r, 3), 3, 1), PreconditionError);
  CHECK_THROWS_AS(validate_generator(gen(Generator::zeta, 1, 1), 2, 2), PreconditionError);
  CHECK_THROWS_AS(validate_generator(gen(Generator::eta, 3), 2, 2), PreconditionError);
  std::mt19937_64 rng(1);
  ParameterSet ps = random_params(rng, 2, 2);
  CHECK_THROWS_AS(apply(gen(Generator::phi), ps, random_point(rng, 2, 2)), PreconditionError);
  // (L - 1) * 2 + 2 + (N + 1) + N(N + 1)/2 + 1 letters, plus phi for N = 1
  CHECK(all_generators(3, 2).size() == 6 + 2 + 3 + 3 + 1);
  CHECK(all_generators(3, 1).size() == 6 + 2 + 2 + 1 + 1 + 1);
}

TEST_CASE("root variables transform as tabulated") {
  std::mt19937_64 rng(2);
  for (auto [L, N] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {3, 2}, {4, 2}}) {
    ParameterSet ps = random_params(rng, L, N);
    auto a = ps.a_all(), b = ps.b_all();
    auto m = [L](int n) { return mod_floor(n, L); };
    for (int n = 0; n < L; ++n) {
      auto ra = parameter_action(gen(Generator::r, n), ps).a_all();
      CHECK(ra[n] == -a[n]);
      if (L > 2) {
        CHECK(ra[m(n + 1)] == a[m(n + 1)] + a[n]);
        CHECK(ra[m(n - 1)] == a[m(n - 1)] + a[n]);
      }
      auto rb = parameter_action(gen(Generator::r_prime, n), ps).b_all();
      CHECK(rb[n] == -b[n]);
      CHECK(parameter_action(gen(Generator::r_prime, n), ps).a_all() == a);
    }
    ParameterSet pi = parameter_action(gen(Generator::pi), ps);
    ParameterSet rho = parameter_action(gen(Generator::rho), ps);
    for (int n = 0; n < L; ++n) {
      CHECK(pi.a(n) == a[m(n + 1)]);
      CHECK(pi.b(n) == b[m(n - 1)]);
      CHECK(rho.a(n) == b[n]);
      CHECK(rho.b(n) == a[n]);
    }
    for (int i = 0; i <= N; ++i) {
      ParameterSet eta = parameter_action(gen(Generator::eta, i), ps);
      CHECK(eta.theta[i] == ps.theta[i] - Rational(1));
      for (int n = 0; n < L; ++n) CHECK(eta.a(n) == a[m(n - 1)]);
    }
  }
}

TEST_CASE("iota acts on the exponents as e_n -> 1 - e_{L-n}") {
  std::mt19937_64 rng(3);
  for (int L = 2; L <= 5; ++L) {
    ParameterSet ps = random_params(rng, L, 1);
    ParameterSet img = parameter_action(gen(Generator::iota), ps);
    for (int n = 0; n < L; ++n) {
      CHECK(img.e[n] == Rational(1) - ps.e_ext(L - n));
      CHECK(img.kappa[n] == -ps.kappa_ext(L - n));
      // the induced index on the root variables is L-1-n
      CHECK(img.a(n) == ps.a(L - 1 - n));
      CHECK(img.b(n) == ps.b(L - 1 - n));
    }
    CHECK(img.theta[1] == -ps.theta[1]);
  }
}

TEST_CASE("phi on the parameters") {
  std::mt19937_64 rng(4);
  ParameterSet ps = random_params(rng, 3, 1);
  ParameterSet img = parameter_action(gen(Generator::phi), ps);
  CHECK(img.theta[1] == ps.kappa[0] - ps.theta[1]);
  CHECK(img.kappa[0] == ps.kappa[0]);
  for (int n = 1; n < 3; ++n) CHECK(img.kappa[n] == -ps.kappa[3 - n]);
  CHECK_NOTHROW(img.check_invariants());
}

TEST_CASE("property: random words keep the invariants of the parameters") {
  std::mt19937_64 rng(5);
  for (auto [L, N] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {3, 2}}) {
    auto gens = all_generators(L, N);
    std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
    for (int trial = 0; trial < 20; ++trial) {
      SymmetryWord w;
      for (int k = 0; k < 10; ++k) w.push_back(gens[pick(rng)]);
      ParameterSet img = parameter_action(w, random_params(rng, L, N));
      CHECK_NOTHROW(img.check_invariants());
      Rational sa, sb;
      for (int n = 0; n < L; ++n) {
        sa += img.a(n);
        sb += img.b(n);
      }
      CHECK(sa == Rational(1));
      CHECK(sb == Rational(1));
    }
  }
}

TEST_CASE("group relations at random points") {
  for (auto [L, N] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}, {3, 2}}) {
    for (const auto& r : check_relations(L, N, 10, 17)) {
      CAPTURE(r.relation);
      CHECK(r.pass());
    }
  }
}

TEST_CASE("property: involutions and pi^L on 50 exact points") {
  std::mt19937_64 rng(6);
  const int L = 3, N = 2;
  int checked = 0;
  for (int trial = 0; trial < 50; ++trial) {
    ParameterSet ps = random_params(rng, L, N);
    PhasePoint<Rational> pt = random_point(rng, L, N);
    SymState<Rational> id{ps, pt};
    for (int n = 0; n < L; ++n) {
      SymState<Rational> img;
      try {
        img = apply(SymmetryWord{gen(Generator::r, n), gen(Generator::r, n)}, ps, pt);
      } catch (const IndeterminacyError&) {
        continue;
      }
      CHECK(same_state(img, id));
      ++checked;
    }
    CHECK(same_state(apply(SymmetryWord(L, gen(Generator::pi)), ps, pt), id));
    CHECK(same_state(apply(SymmetryWord{gen(Generator::rho), gen(Generator::rho)}, ps, pt), id));
  }
  CHECK(checked > 100);
}

TEST_CASE("vanishing denominators raise an indeterminacy") {
  std::mt19937_64 rng(7);
  ParameterSet ps = random_params(rng, 3, 1);
  PhasePoint<Rational> pt(3, 1);
  pt.s[0] = Rational(5, 2);
  // r_1 divides by sum_j q_2^(j) p_1^(j) = kappa_1 + p_1 (q_2 - q_1)
  pt.P(1, 1) = Rational(1);
  pt.Q(1, 2) = Rational(2);
  pt.Q(1, 1) = Rational(2) + ps.kappa[1];
  pt.P(1, 2) = Rational(1, 3);
  CHECK_THROWS_AS(point_action(gen(Generator::r, 1), ps, pt), IndeterminacyError);
}

TEST_CASE("symbolic transport of a rational solution") {
  SigmaFamily fam(build_sigma_grid({0, 1}, {1, 0}, ctx_of(2, testutil::theta_pool(2))));
  CanonicalSolution sol = canonical_from_sigma(fam);
  for (const auto& g : {gen(Generator::eta, 1), gen(Generator::zeta, 0, 1), gen(Generator::phi), gen(Generator::r, 1),
                        gen(Generator::iota)}) {
    CAPTURE(g.str());
    CHECK(all_pass(transport_residual(g, sol.params, sol.point)));
  }
}

TEST_CASE("pointwise transport for every generator") {
  for (auto [L, N] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}}) {
    SigmaFamily fam(build_sigma_grid(L == 2 ? CoreIndex{0, 1} : CoreIndex{0, 1, 0},
                                     L == 2 ? CoreIndex{1, 0} : CoreIndex{1, 0, 0},
                                     ctx_of(L, testutil::theta_pool(N + 1))));
    CanonicalSolution sol = canonical_from_sigma(fam);
    std::vector<std::vector<Rational>> ts{{Rational(3, 2), Rational(7, 3)}, {Rational(5, 4), Rational(-2, 3)},
                                          {Rational(-7, 5), Rational(9, 7)}};
    SolutionJets jets = solution_jets(sol.point, ts);
    REQUIRE(!jets.points.empty());
    for (const auto& g : all_generators(L, N)) {
      CAPTURE(g.str());
      CHECK(transport_check(g, sol.params, jets).pass());
    }
    CHECK(transport_check(parse_word("eta1,pi,zeta02,r1"), sol.params, jets).pass());
    // wrong constants in the Hamiltonian of the image
    ParameterSet bad = sol.params;
    bad.theta[0] += Rational(1, 2);
    bad.kappa[0] += Rational(1, 2);
    CHECK_FALSE(transport_check(gen(Generator::pi), bad, jets).pass());
  }
}

TEST_CASE("property: every generator is symplectic") {
  std::mt19937_64 rng(8);
  for (auto [L, N] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}, {3, 2}}) {
    for (int trial = 0; trial < 5; ++trial) {
      ParameterSet ps = random_params(rng, L, N);
      PhasePoint<Rational> rp = random_point(rng, L, N);
      for (const auto& g : all_generators(L, N)) {
        CAPTURE(g.str());
        double defect = 0;
        try {
          defect = symplectic_defect(g, ps, rp);
        } catch (const IndeterminacyError&) {
          continue;
        }
        CHECK(defect <= 1e-8);
      }
    }
  }
}

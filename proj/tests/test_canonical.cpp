#include "doctest.h"
#include "test_util.hpp"
#include "ucred/canonical.hpp"

using namespace ucred;

namespace {

SubstitutionContext ctx_of(int L, std::vector<Rational> theta) {
  return SubstitutionContext{L, static_cast<int>(theta.size()) - 1, std::move(theta)};
}

}  // namespace

TEST_CASE("trivial grid gives q = t^n and q p = theta / L") {
  for (int L : {2, 3, 4}) {
    auto th = testutil::theta_pool(3);
    SigmaFamily fam(build_sigma_grid(CoreIndex(L, 0), CoreIndex(L, 0), ctx_of(L, th)));
    CanonicalSolution sol = canonical_from_sigma(fam);
    for (int i = 1; i <= 2; ++i) {
      CHECK(sol.point.s[i - 1] == RationalFunction::var(i, L));
      for (int n = 1; n < L; ++n) {
        CHECK(sol.point.Q(i, n) == RationalFunction::var(i, n));
        CHECK(sol.point.Q(i, n) * sol.point.P(i, n) == RationalFunction(th[i] / Rational(L)));
      }
    }
    CHECK(all_pass(canonical_flow_residual(sol.params, sol.point)));
  }
}

TEST_CASE("canonical equations hold for sigma solutions") {
  struct Case {
    CoreIndex nu, nup;
    int N;
  };
  for (const auto& c : std::vector<Case>{{{0, 1}, {0, 0}, 1}, {{0, 1}, {1, 0}, 1}, {{0, 1, 0}, {0, 0, 0}, 1},
                                         {{1, 0, 0}, {0, 1, 0}, 1}, {{0, 1}, {1, 0}, 2}}) {
    int L = static_cast<int>(c.nu.size());
    SigmaFamily fam(build_sigma_grid(c.nu, c.nup, ctx_of(L, testutil::theta_pool(c.N + 1))));
    CanonicalSolution sol = canonical_from_sigma(fam);
    auto rs = canonical_flow_residual(sol.params, sol.point);
    CHECK(rs.size() == static_cast<std::size_t>(2 * c.N * c.N * (L - 1)));
    CHECK(all_pass(rs));
  }
}

TEST_CASE("negative control: perturbed parameters break the flow") {
  SigmaFamily fam(build_sigma_grid({0, 1}, {1, 0}, ctx_of(2, testutil::theta_pool(2))));
  CanonicalSolution sol = canonical_from_sigma(fam);
  ParameterSet bad = sol.params;
  bad.e[0] += Rational(1, 3);
  bad.e[1] -= Rational(1, 3);
  CHECK_FALSE(all_pass(canonical_flow_residual(bad, sol.point)));
}

TEST_CASE("evaluation in both modes agrees") {
  SigmaFamily fam(build_sigma_grid({0, 1}, {1, 0}, ctx_of(2, testutil::theta_pool(3))));
  CanonicalSolution sol = canonical_from_sigma(fam);
  auto ex = evaluate_solution(sol.point, std::vector<Rational>{Rational(3, 2), Rational(11, 5)});
  auto fl = evaluate_solution(sol.point, std::vector<double>{1.5, 2.2});
  for (std::size_t k = 0; k < ex.q.size(); ++k) {
    CHECK(fl.q[k] == doctest::Approx(ex.q[k].to_double()).epsilon(1e-12));
    CHECK(fl.p[k] == doctest::Approx(ex.p[k].to_double()).epsilon(1e-12));
  }
  CHECK(ex.s[0] == Rational(9, 4));
  CHECK_THROWS_AS(evaluate_solution(sol.point, std::vector<double>{1.5}), PreconditionError);
}

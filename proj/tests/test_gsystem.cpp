#include "doctest.h"
#include "test_util.hpp"
#include "ucred/gsystem.hpp"

using namespace ucred;

namespace {

SubstitutionContext ctx_of(int L, std::vector<Rational> theta) {
  return SubstitutionContext{L, static_cast<int>(theta.size()) - 1, std::move(theta)};
}

}  // namespace

TEST_CASE("trivial grid gives f = 1 and g = theta") {
  auto th = testutil::theta_pool(3);
  SigmaFamily fam(build_sigma_grid({0, 0, 0}, {0, 0, 0}, ctx_of(3, th)));
  GVariables gv = gvars_from_sigma(fam);
  for (int i = 0; i <= 2; ++i)
    for (int m = 0; m < 3; ++m)
      for (int n = 0; n < 3; ++n) {
        CHECK(gv.F(i, m, n) == RationalFunction(1));
        CHECK(gv.G(i, m, n) == RationalFunction(th[i]));
      }
}

TEST_CASE("g-system holds on nontrivial grids") {
  struct Case {
    CoreIndex nu, nup;
    int N;
  };
  for (const auto& c : std::vector<Case>{{{0, 1}, {0, 0}, 1}, {{0, 1}, {1, 0}, 1}, {{0, 1, 0}, {1, 0, 0}, 1},
                                         {{0, 1}, {1, 0}, 2}}) {
    int L = static_cast<int>(c.nu.size());
    SigmaFamily fam(build_sigma_grid(c.nu, c.nup, ctx_of(L, testutil::theta_pool(c.N + 1))));
    GVariables gv = gvars_from_sigma(fam);
    UVArrays uv = uv_from_fg(gv);
    CHECK(all_pass(check_gvars(fam, gv)));
    CHECK(all_pass(check_uv_relations(fam, gv, uv)));
    auto res = g_system_residual(fam.base(), gv, uv);
    CHECK(!res.empty());
    CHECK(all_pass(res));
    // the Hirota form of g agrees with the product form
    for (int i = 0; i <= c.N; ++i)
      for (int m = 0; m < L; ++m)
        for (int n = 0; n < L; ++n) CHECK(g_hirota_form(fam, i, m, n) == gv.G(i, m, n));
  }
}

TEST_CASE("sum of g over i is kappa_{m,n}") {
  SigmaFamily fam(build_sigma_grid({0, 1, 0}, {1, 0, 0}, ctx_of(3, testutil::theta_pool(2))));
  GVariables gv = gvars_from_sigma(fam);
  for (int m = 0; m < 3; ++m)
    for (int n = 0; n < 3; ++n) {
      RationalFunction acc;
      for (int i = 0; i <= 1; ++i) acc += gv.G(i, m, n);
      CHECK(acc == RationalFunction(kappa_mn(fam.base(), m, n)));
    }
}

TEST_CASE("the t_j-equation for f with g_{m,n-1} in the coefficient fails") {
  SigmaFamily fam(build_sigma_grid({0, 1}, {1, 0}, ctx_of(2, testutil::theta_pool(2))));
  GVariables gv = gvars_from_sigma(fam);
  UVArrays uv = uv_from_fg(gv);
  int failing = 0;
  for (int m = 0; m < 2; ++m)
    for (int n = 0; n < 2; ++n)
      for (int i = 0; i <= 1; ++i) failing += !g_system_21b_as_printed(gv, uv, m, n, i, 1 - i).pass;
  CHECK(failing > 0);
}

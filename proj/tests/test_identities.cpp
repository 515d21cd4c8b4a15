#include <random>

#include "doctest.h"
#include "test_util.hpp"
#include "ucred/errors.hpp"
#include "ucred/identities.hpp"

using namespace ucred;

namespace {

SubstitutionContext ctx_of(int L, std::vector<Rational> theta) {
  return SubstitutionContext{L, static_cast<int>(theta.size()) - 1, std::move(theta)};
}

int failures(const std::vector<IdentityReport>& rs) {
  int k = 0;
  for (const auto& r : rs) k += !r.pass;
  return k;
}

}  // namespace

TEST_CASE("trivial grid satisfies everything") {
  for (int L : {2, 3}) {
    SigmaFamily fam(build_sigma_grid(CoreIndex(L, 0), CoreIndex(L, 0), ctx_of(L, testutil::theta_pool(2))));
    CHECK(all_pass(check_bilinear(fam)));
    CHECK(all_pass(check_all_toda(fam)));
    CHECK(all_pass(check_all_duc(fam)));
  }
}

TEST_CASE("bilinear system and Toda on small grids") {
  struct Case {
    int L;
    CoreIndex nu, nup;
    int N;
  };
  std::vector<Case> cases{{2, {0, 1}, {0, 0}, 1}, {2, {0, 1}, {1, 0}, 1}, {2, {1, 0}, {0, 1}, 2},
                          {3, {0, 1, 0}, {0, 0, 0}, 1}, {3, {1, 0, 0}, {0, 0, 1}, 1}, {2, {0, 2}, {0, 0}, 1}};
  for (const auto& c : cases) {
    CAPTURE(c.L);
    SigmaFamily fam(build_sigma_grid(c.nu, c.nup, ctx_of(c.L, testutil::theta_pool(c.N + 1))));
    auto b = check_bilinear(fam);
    CHECK(failures(b) == 0);
    CHECK(all_pass(check_all_toda(fam)));
    // one report per (m, n) and ordered pair in a, c, each i in b, plus 16d
    int V = c.N + 1;
    CHECK(b.size() == static_cast<std::size_t>(c.L * c.L * (2 * V * (V - 1) + V + 1)));
  }
}

TEST_CASE("difference equations on small grids") {
  SigmaFamily f21(build_sigma_grid({0, 1}, {0, 0}, ctx_of(2, testutil::theta_pool(2))));
  CHECK(all_pass(check_all_duc(f21)));
  SigmaFamily f22(build_sigma_grid({0, 1}, {1, 0}, ctx_of(2, testutil::theta_pool(3))));
  CHECK(all_pass(check_all_duc(f22)));
  SigmaFamily f31(build_sigma_grid({0, 1, 0}, {0, 0, 0}, ctx_of(3, testutil::theta_pool(2))));
  CHECK(all_pass(check_all_duc(f31)));
}

TEST_CASE("difference equations with four variables") {
  // Two-term instances need |I| - |J| = 2 when m = n = 0; with four
  // variables the three-term identity I = {0, 1, 2}, J = {3} appears.
  SigmaFamily fam(build_sigma_grid({0, 1}, {0, 0}, ctx_of(2, testutil::theta_pool(4))));
  auto insts = enumerate_duc_instances(3);
  int three_term = 0;
  for (const auto& inst : insts)
    if (inst.family == 1 && inst.I.size() == 3 && inst.J.size() == 1) {
      ++three_term;
      CHECK(check_duc(fam, inst).pass);
    }
  CHECK(three_term > 0);
}

TEST_CASE("instance enumeration respects the cardinality constraints") {
  for (int N = 1; N <= 3; ++N)
    for (const auto& inst : enumerate_duc_instances(N)) {
      int diff = static_cast<int>(inst.I.size()) - static_cast<int>(inst.J.size());
      if (inst.family == 1) CHECK(diff == inst.m + inst.n + 2);
      if (inst.family == 2) CHECK(diff == inst.n + 1);
      if (inst.family == 3) CHECK(diff == inst.m + 1);
    }
}

TEST_CASE("preconditions") {
  SigmaFamily fam(build_sigma_grid({0, 1}, {0, 0}, ctx_of(2, testutil::theta_pool(2))));
  CHECK_THROWS_AS(check_duc(fam, 1, {0, 1}, {}, 1, 0), PreconditionError);
  CHECK_THROWS_AS(check_duc(fam, 1, {0, 2}, {}, 0, 0), PreconditionError);
  CHECK_THROWS_AS(check_duc(fam, 2, {0}, {0}, 0, 0), PreconditionError);
  CHECK_THROWS_AS(check_toda(fam, 0, 0, 1, 1), PreconditionError);
  CHECK_NOTHROW(check_duc(fam, 1, {0, 1}, {}, 0, 0));
}

TEST_CASE("negative control: a corrupted cell is detected") {
  SigmaGrid grid = build_sigma_grid({0, 1}, {0, 0}, ctx_of(2, testutil::theta_pool(2)));
  grid.overwrite_cell(0, 0, grid.sigma(0, 0) + LaurentPoly::var(1, 2));
  SigmaFamily fam(grid);
  auto b = check_bilinear(fam);
  CHECK(failures(b) > 0);
  auto toda = check_all_toda(fam);
  CHECK(failures(toda) > 0);
  // failing reports carry a nonzero residual and the cell indices
  for (const auto& r : b)
    if (!r.pass) {
      CHECK_FALSE(r.residual.is_zero());
      CHECK_FALSE(r.indices.empty());
    }
}

TEST_CASE("property: random cores satisfy Toda and the bilinear system") {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> d(0, 1);
  for (int trial = 0; trial < 6; ++trial) {
    int L = 2 + trial % 2;
    CoreIndex nu(L), nup(L);
    for (auto& x : nu) x = d(rng);
    for (auto& x : nup) x = d(rng);
    std::vector<Rational> th{testutil::random_nonzero(rng), testutil::random_nonzero(rng)};
    SigmaFamily fam(build_sigma_grid(nu, nup, ctx_of(L, th)));
    CHECK(all_pass(check_all_toda(fam)));
    CHECK(all_pass(check_bilinear(fam)));
  }
}

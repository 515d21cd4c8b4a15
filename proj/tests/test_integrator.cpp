#include <algorithm>
#include <cmath>
#include <sstream>

#include "doctest.h"
#include "test_util.hpp"
#include "ucred/canonical.hpp"
#include "ucred/errors.hpp"
#include "ucred/integrator.hpp"

using namespace ucred;

namespace {

SubstitutionContext ctx_of(int L, std::vector<Rational> theta) {
  return SubstitutionContext{L, static_cast<int>(theta.size()) - 1, std::move(theta)};
}

CanonicalSolution solution(const CoreIndex& nu, const CoreIndex& nup, int N) {
  SigmaFamily fam(build_sigma_grid(nu, nup, ctx_of(static_cast<int>(nu.size()), testutil::theta_pool(N + 1))));
  return canonical_from_sigma(fam);
}

double max_diff(const PhasePoint<double>& a, const PhasePoint<double>& b) {
  double d = 0;
  for (std::size_t k = 0; k < a.q.size(); ++k)
    d = std::max({d, std::abs(a.q[k] - b.q[k]) / std::max(1.0, std::abs(b.q[k])),
                  std::abs(a.p[k] - b.p[k]) / std::max(1.0, std::abs(b.p[k]))});
  return d;
}

// t with t^L = s
std::vector<double> t_of(const std::vector<double>& s, int L) {
  std::vector<double> t;
  for (double x : s) t.push_back(std::pow(x, 1.0 / L));
  return t;
}

}  // namespace

TEST_CASE("endpoint matches the exact rational solution") {
  struct Case {
    CoreIndex nu, nup;
    int N;
    std::vector<double> t0, s1;
  };
  for (const auto& c : std::vector<Case>{{{0, 1}, {1, 0}, 1, {1.5}, {3.1}},
                                         {{0, 1, 0}, {1, 0, 0}, 1, {1.3}, {2.9}},
                                         {{0, 1}, {1, 0}, 2, {1.5, 2.2}, {2.37, 5.0}}}) {
    CanonicalSolution sol = solution(c.nu, c.nup, c.N);
    const int L = sol.point.L;
    PhasePoint<double> start = evaluate_solution(sol.point, c.t0);
    Trajectory tr = integrate(sol.params, start, {start.s, c.s1});
    REQUIRE_FALSE(tr.aborted);
    PhasePoint<double> exact = evaluate_solution(sol.point, t_of(c.s1, L));
    CHECK(max_diff(tr.samples.back().point, exact) <= 1e-8);
    CHECK(tr.accepted > 0);
  }
}

TEST_CASE("two routes in s-space reach the same point") {
  CanonicalSolution sol = solution({0, 1}, {1, 0}, 2);
  PhasePoint<double> start = evaluate_solution(sol.point, std::vector<double>{1.5, 2.2});
  std::vector<double> a = start.s, b{2.6, 5.3};
  Trajectory r1 = integrate(sol.params, start, {a, {b[0], a[1]}, b});
  Trajectory r2 = integrate(sol.params, start, {a, {a[0], b[1]}, b});
  CHECK(max_diff(r1.samples.back().point, r2.samples.back().point) <= 1e-7);
}

TEST_CASE("zero-length path returns the initial point") {
  CanonicalSolution sol = solution({0, 1}, {1, 0}, 1);
  PhasePoint<double> start = evaluate_solution(sol.point, std::vector<double>{1.5});
  Trajectory tr = integrate(sol.params, start, {start.s});
  REQUIRE(tr.samples.size() == 1);
  CHECK(tr.samples[0].point.q == start.q);
  CHECK(tr.length == 0.0);
}

TEST_CASE("approaching the singular locus aborts with the last good state") {
  CanonicalSolution sol = solution({0, 1}, {1, 0}, 1);
  PhasePoint<double> start = evaluate_solution(sol.point, std::vector<double>{1.5});
  Trajectory tr = integrate(sol.params, start, {start.s, {0.5}});
  CHECK(tr.aborted);
  CHECK_FALSE(tr.message.empty());
  CHECK(std::abs(tr.last_good.s[0] - 1.0) <= 2e-3);
  CHECK(singular_distance(tr.last_good.s) >= 1e-3 * 0.99);
  PhasePoint<double> near = start;
  near.s[0] = 1.0005;
  CHECK_THROWS_AS(integrate(sol.params, near, {near.s}), SingularityError);
}

TEST_CASE("preconditions") {
  CanonicalSolution sol = solution({0, 1}, {1, 0}, 1);
  PhasePoint<double> start = evaluate_solution(sol.point, std::vector<double>{1.5});
  CHECK_THROWS_AS(integrate(sol.params, start, {}), PreconditionError);
  CHECK_THROWS_AS(integrate(sol.params, start, {{3.0}, {4.0}}), PreconditionError);
  CHECK_THROWS_AS(integrate(sol.params, start, {{2.25, 1.0}}), PreconditionError);
  IntegratorOptions bad;
  bad.rtol = 0;
  CHECK_THROWS_AS(integrate(sol.params, start, {start.s, {3.0}}, bad), PreconditionError);
}

TEST_CASE("dense samples and CSV layout") {
  CanonicalSolution sol = solution({0, 1}, {1, 0}, 2);
  PhasePoint<double> start = evaluate_solution(sol.point, std::vector<double>{1.5, 2.2});
  IntegratorOptions opt;
  Trajectory probe = integrate(sol.params, start, {start.s, {2.6, 5.3}});
  for (int k = 0; k <= 4; ++k) opt.samples.push_back(probe.length * k / 4);
  Trajectory tr = integrate(sol.params, start, {start.s, {2.6, 5.3}}, opt);
  REQUIRE(tr.samples.size() == 5);
  // dense output at an interior sample agrees with the exact solution
  const auto& mid = tr.samples[2].point;
  PhasePoint<double> exact = evaluate_solution(sol.point, t_of(mid.s, 2));
  CHECK(max_diff(mid, exact) <= 1e-7);
  std::ostringstream os;
  write_trajectory_csv(os, tr);
  std::istringstream is(os.str());
  std::string header, line;
  std::getline(is, header);
  CHECK(header == "step,path_param,s1,s2,q_1_1,q_1_2,p_1_1,p_1_2,H1,H2");
  int rows = 0;
  while (std::getline(is, line)) {
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 9);
  }
  CHECK(rows == 5);
}

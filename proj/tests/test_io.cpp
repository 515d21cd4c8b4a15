#include <fstream>

#include "doctest.h"
#include "test_util.hpp"
#include "ucred/errors.hpp"
#include "ucred/io.hpp"

using namespace ucred;

TEST_CASE("rational round trip") {
  for (const auto& q : {Rational(0), Rational(7), Rational(-3, 4), Rational(22, 7)}) {
    CHECK(rational_from_json(rational_to_json(q), "x") == q);
  }
  CHECK(rational_to_json(Rational(5)) == json("5"));
  CHECK(rational_to_json(Rational(-3, 4)) == json("-3/4"));
  CHECK(rational_from_json(json(3), "x") == Rational(3));
  CHECK_THROWS_AS(rational_from_json(json(0.5), "x"), ConfigError);
  CHECK_THROWS_AS(rational_from_json(json("1/0"), "x"), ConfigError);
  CHECK_THROWS_AS(rational_from_json(json("abc"), "x"), ConfigError);
  CHECK_THROWS_AS(rationals_from_json(json("1/2"), "x"), ConfigError);
  CHECK(number_from_json(json("9/4"), "x") == 2.25);
  CHECK(number_from_json(json(2.45), "x") == 2.45);
  CHECK_THROWS_AS(number_from_json(json("2.45"), "x"), ConfigError);
}

TEST_CASE("parameters and points round trip") {
  ParameterSet ps{{Rational(1, 2), Rational(1, 3)}, {Rational(1, 5), Rational(3, 10)}, {Rational(1, 7), Rational(29, 42)}};
  CHECK(params_from_json(params_to_json(ps)) == ps);
  PhasePoint<Rational> pt(3, 2);
  pt.s = {Rational(5, 2), Rational(7)};
  for (std::size_t k = 0; k < pt.q.size(); ++k) {
    pt.q[k] = Rational(static_cast<int>(k) + 1, 3);
    pt.p[k] = Rational(-static_cast<int>(k), 5);
  }
  PhasePoint<Rational> back = point_from_json(point_to_json(pt), 3, 2);
  CHECK(back.s == pt.s);
  CHECK(back.q == pt.q);
  CHECK(back.p == pt.p);
  CHECK_THROWS_AS(point_from_json(point_to_json(pt), 2, 2), ConfigError);
}

TEST_CASE("run configuration from cores") {
  RunConfig c = parse_run_config(json::parse(R"({"L": 2, "N": 1, "theta": ["1/2", "1/3"], "nu": [0, 1],
      "nu_prime": [1, 0], "t": ["3/2"], "path": [["9/4"], [2.45]], "seed": 9, "samples": 4,
      "tolerances": {"rtol": 1e-9}})"));
  CHECK(c.L == 2);
  CHECK(c.has_cores());
  CHECK(c.seed == 9);
  CHECK(c.path.size() == 2);
  CHECK(c.path[0][0] == 2.25);
  CHECK(c.tolerances.rtol == 1e-9);
  CHECK(c.params == derive_parameters(c.theta, *c.nu, *c.nu_prime));
  CHECK_NOTHROW(c.params.check_invariants());
}

TEST_CASE("run configuration errors") {
  auto bad = [](const char* text) { return parse_run_config(json::parse(text)); };
  CHECK_THROWS_AS(bad(R"([1, 2])"), ConfigError);
  CHECK_THROWS_AS(bad(R"({"N": 1, "theta": ["1/2", "1/3"], "nu": [0, 1], "nu_prime": [0, 0]})"), ConfigError);
  CHECK_THROWS_AS(bad(R"({"L": 2, "N": 1, "theta": ["1/2"], "nu": [0, 1], "nu_prime": [0, 0]})"), ConfigError);
  CHECK_THROWS_AS(bad(R"({"L": 2, "N": 1, "theta": ["1/2", "1/3"], "nu": [0, 1, 0], "nu_prime": [0, 0]})"),
                  ConfigError);
  CHECK_THROWS_AS(bad(R"({"L": 2, "N": 1, "theta": ["1/2", "1/3"]})"), ConfigError);
  CHECK_THROWS_AS(bad(R"({"L": 2, "N": 1, "theta": ["1/2", "1/3"], "e": ["1/2", "0"], "kappa": ["1", "1"]})"),
                  ConfigError);
  CHECK_THROWS_AS(bad(R"({"L": 2, "N": 1, "theta": ["1/2", "1/3"], "nu": [0, 1], "nu_prime": [0, 0],
      "tolerances": {"rtol": -1}})"), ConfigError);
  CHECK_THROWS_AS(bad(R"({"L": 2, "N": 1, "theta": ["1/2", "1/3"], "nu": [0, 1], "nu_prime": [0, 0],
      "mode": "sideways"})"), ConfigError);
  CHECK_THROWS_AS(bad(R"({"L": 2, "N": 1, "theta": ["1/2", "1/3"], "nu": [0, 1], "nu_prime": [0, 0],
      "path": [["1", "2"]]})"), ConfigError);
  CHECK_THROWS_AS(load_run_config("/nonexistent/config.json"), ConfigError);
  const char* tmp = "/tmp/ucred_test_io_bad.json";
  std::ofstream(tmp) << "{ not json";
  CHECK_THROWS_AS(load_run_config(tmp), ConfigError);
}

TEST_CASE("explicit parameters need the invariants") {
  RunConfig c = parse_run_config(json::parse(
      R"({"L": 2, "N": 1, "theta": ["1/2", "1/3"], "e": ["1/5", "3/10"], "kappa": ["1/7", "29/42"]})"));
  CHECK_FALSE(c.has_cores());
  CHECK(c.params.kappa[1] == Rational(29, 42));
}

TEST_CASE("grid and report serialization") {
  SigmaGrid g = build_sigma_grid({0, 1}, {0, 0}, SubstitutionContext{2, 1, testutil::theta_pool(2)});
  json j = grid_to_json(g);
  CHECK(j["L"] == 2);
  CHECK(j["degrees"].size() == 2);
  SigmaFamily fam(g);
  json r = report_to_json(check_toda(fam, 0, 0, 0, 1));
  CHECK(r["id"] == "toda");
  CHECK(r["pass"] == true);
  CHECK(r.contains("timing_ms"));
  CHECK(r["residual_terms"] == 0);
}

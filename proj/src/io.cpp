#include "ucred/io.hpp"

#include <fstream>
#include <sstream>

namespace ucred {

std::string library_version() { return UCRED_VERSION; }

json rational_to_json(const Rational& q) { return q.str(); }

Rational rational_from_json(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) {
    try {
      return Rational::parse(j.get<std::string>());
    } catch (const ConfigError& e) {
      throw ConfigError(where + ": " + e.what());
    }
  }
  throw ConfigError(where + ": expected a rational as \"p/q\" or an integer");
}

std::vector<Rational> rationals_from_json(const json& j, const std::string& where) {
  if (!j.is_array()) throw ConfigError(where + ": expected an array");
  std::vector<Rational> out;
  for (std::size_t k = 0; k < j.size(); ++k) out.push_back(rational_from_json(j[k], where + "[" + std::to_string(k) + "]"));
  return out;
}

double number_from_json(const json& j, const std::string& where) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return rational_from_json(j, where).to_double();
  throw ConfigError(where + ": expected a number");
}

namespace {

json rationals_to_json(const std::vector<Rational>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(rational_to_json(x));
  return a;
}

const json& require(const json& j, const char* key) {
  if (!j.contains(key)) throw ConfigError(std::string("missing field '") + key + "'");
  return j.at(key);
}

int int_field(const json& j, const char* key) {
  const json& v = require(j, key);
  if (!v.is_number_integer()) throw ConfigError(std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

CoreIndex core_from_json(const json& j, const char* key, int L) {
  const json& v = require(j, key);
  if (!v.is_array()) throw ConfigError(std::string("field '") + key + "' must be an integer array");
  CoreIndex out;
  for (const auto& x : v) {
    if (!x.is_number_integer()) throw ConfigError(std::string("field '") + key + "' must be an integer array");
    out.push_back(x.get<int>());
  }
  if (static_cast<int>(out.size()) != L) throw ConfigError(std::string("field '") + key + "' must have L entries");
  return out;
}

}  // namespace

json params_to_json(const ParameterSet& ps) {
  return json{{"theta", rationals_to_json(ps.theta)}, {"e", rationals_to_json(ps.e)}, {"kappa", rationals_to_json(ps.kappa)}};
}

ParameterSet params_from_json(const json& j) {
  ParameterSet ps;
  ps.theta = rationals_from_json(require(j, "theta"), "theta");
  ps.e = rationals_from_json(require(j, "e"), "e");
  ps.kappa = rationals_from_json(require(j, "kappa"), "kappa");
  if (ps.e.size() < 2 || ps.kappa.size() != ps.e.size()) throw ConfigError("e and kappa need L >= 2 entries each");
  if (ps.theta.size() < 2) throw ConfigError("theta needs N+1 >= 2 entries");
  try {
    ps.check_invariants();
  } catch (const ConsistencyError& e) {
    throw ConfigError(std::string("parameters: ") + e.what());
  }
  return ps;
}

json grid_to_json(const SigmaGrid& grid) {
  const int L = grid.L();
  json deg = json::array(), sig = json::array();
  for (int m = 0; m < L; ++m) {
    json drow = json::array(), srow = json::array();
    for (int n = 0; n < L; ++n) {
      drow.push_back(grid.degree(m, n));
      srow.push_back(grid.sigma(m, n).str());
    }
    deg.push_back(drow);
    sig.push_back(srow);
  }
  return json{{"L", L},
              {"N", grid.N()},
              {"theta", rationals_to_json(grid.context().theta)},
              {"nu", grid.nu()},
              {"nu_prime", grid.nu_prime()},
              {"degrees", deg},
              {"sigma", sig}};
}

json report_to_json(const IdentityReport& r) {
  json idx = json::object();
  for (const auto& [k, v] : r.indices) idx[k] = v;
  return json{{"id", r.id},
              {"indices", idx},
              {"pass", r.pass},
              {"residual_terms", r.pass ? 0 : static_cast<long>(r.residual.size())},
              {"timing_ms", r.timing_ms}};
}

json reports_to_json(const std::vector<IdentityReport>& rs) {
  json a = json::array();
  for (const auto& r : rs) a.push_back(report_to_json(r));
  return a;
}

json matrix_to_json(const Mat<RationalFunction>& m) {
  json a = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c).str());
    a.push_back(row);
  }
  return a;
}

json matrix_to_json(const Mat<Rational>& m) {
  json a = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c).str());
    a.push_back(row);
  }
  return a;
}

json lax_to_json(const LaxData<RationalFunction>& lax) {
  json A = json::array();
  for (const auto& a : lax.A) A.push_back(matrix_to_json(a));
  return json{{"L", lax.L}, {"N", lax.N}, {"gauge", gauge_name(lax.gauge)}, {"A", A}};
}

json relation_to_json(const RelationResult& r) {
  return json{{"relation", r.relation}, {"trials", r.trials}, {"passed", r.passed}, {"skipped", r.skipped}, {"pass", r.pass()}};
}

json transport_to_json(const TransportResult& r) {
  json j{{"generator", r.generator}, {"points", r.points}, {"passed", r.passed}, {"skipped", r.skipped}, {"pass", r.pass()}};
  if (!r.first_failure.empty()) j["first_failure"] = r.first_failure;
  return j;
}

namespace {

template <class S, class F>
json point_json(const PhasePoint<S>& pt, F conv) {
  json s = json::array(), q = json::array(), p = json::array();
  for (const auto& x : pt.s) s.push_back(conv(x));
  for (int i = 1; i <= pt.N; ++i) {
    json qr = json::array(), pr = json::array();
    for (int n = 1; n < pt.L; ++n) {
      qr.push_back(conv(pt.Q(i, n)));
      pr.push_back(conv(pt.P(i, n)));
    }
    q.push_back(qr);
    p.push_back(pr);
  }
  return json{{"s", s}, {"q", q}, {"p", p}};
}

}  // namespace

json point_to_json(const PhasePoint<Rational>& pt) {
  return point_json(pt, [](const Rational& x) { return rational_to_json(x); });
}

json point_to_json(const PhasePoint<double>& pt) {
  return point_json(pt, [](double x) { return json(x); });
}

PhasePoint<Rational> point_from_json(const json& j, int L, int N) {
  PhasePoint<Rational> pt(L, N);
  auto s = rationals_from_json(require(j, "s"), "point.s");
  if (static_cast<int>(s.size()) != N) throw ConfigError("point.s must have N entries");
  pt.s = s;
  for (const char* key : {"q", "p"}) {
    const json& rows = require(j, key);
    if (!rows.is_array() || static_cast<int>(rows.size()) != N)
      throw ConfigError(std::string("point.") + key + " must have N rows");
    for (int i = 1; i <= N; ++i) {
      auto row = rationals_from_json(rows[i - 1], std::string("point.") + key);
      if (static_cast<int>(row.size()) != L - 1) throw ConfigError(std::string("point.") + key + " rows need L-1 entries");
      for (int n = 1; n < L; ++n) (key[0] == 'q' ? pt.Q(i, n) : pt.P(i, n)) = row[n - 1];
    }
  }
  return pt;
}

RunConfig parse_run_config(const json& j) {
  if (!j.is_object()) throw ConfigError("configuration must be a JSON object");
  RunConfig c;
  c.raw = j;
  c.L = int_field(j, "L");
  c.N = int_field(j, "N");
  if (c.L < 2 || c.L > 8) throw ConfigError("L must lie in 2..8");
  if (c.N < 1 || c.N > 5) throw ConfigError("N must lie in 1..5");
  c.theta = rationals_from_json(require(j, "theta"), "theta");
  if (static_cast<int>(c.theta.size()) != c.N + 1) throw ConfigError("theta must have N+1 entries");
  const bool cores = j.contains("nu") || j.contains("nu_prime");
  const bool explicit_params = j.contains("e") || j.contains("kappa");
  if (cores && explicit_params) throw ConfigError("give either cores (nu, nu_prime) or parameters (e, kappa), not both");
  if (cores) {
    c.nu = core_from_json(j, "nu", c.L);
    c.nu_prime = core_from_json(j, "nu_prime", c.L);
    c.params = derive_parameters(c.theta, *c.nu, *c.nu_prime);
  } else if (explicit_params) {
    c.params = params_from_json(j);
    if (static_cast<int>(c.params.e.size()) != c.L) throw ConfigError("e and kappa must have L entries");
  } else {
    throw ConfigError("missing parameters: need nu/nu_prime or e/kappa");
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer()) throw ConfigError("seed must be an integer");
    c.seed = j["seed"].get<unsigned long long>();
  }
  if (j.contains("point")) c.point = point_from_json(j["point"], c.L, c.N);
  if (j.contains("t")) {
    if (!c.has_cores()) throw ConfigError("'t' needs cores to define the rational solution");
    c.t_start = rationals_from_json(j["t"], "t");
    if (static_cast<int>(c.t_start->size()) != c.N) throw ConfigError("t must have N entries");
  }
  if (j.contains("path")) {
    const json& p = j["path"];
    if (!p.is_array()) throw ConfigError("path must be an array of waypoints");
    for (std::size_t k = 0; k < p.size(); ++k) {
      if (!p[k].is_array() || static_cast<int>(p[k].size()) != c.N) throw ConfigError("each path waypoint needs N entries");
      std::vector<double> w;
      for (std::size_t m = 0; m < p[k].size(); ++m)
        w.push_back(number_from_json(p[k][m], "path[" + std::to_string(k) + "]"));
      c.path.push_back(w);
    }
  }
  if (j.contains("tolerances")) {
    const json& t = j["tolerances"];
    if (!t.is_object()) throw ConfigError("tolerances must be an object");
    for (auto it = t.begin(); it != t.end(); ++it) {
      double v = number_from_json(it.value(), "tolerances." + it.key());
      if (!(v > 0)) throw ConfigError("tolerances." + it.key() + " must be positive");
      if (it.key() == "rtol") c.tolerances.rtol = v;
      else if (it.key() == "atol") c.tolerances.atol = v;
      else if (it.key() == "margin") c.tolerances.margin = v;
      else if (it.key() == "h_min") c.tolerances.h_min = v;
      else throw ConfigError("unknown tolerance '" + it.key() + "'");
    }
  }
  if (j.contains("samples")) c.samples = int_field(j, "samples");
  if (c.samples < 0) throw ConfigError("samples must be non-negative");
  if (j.contains("word")) {
    if (!j["word"].is_string()) throw ConfigError("word must be a string");
    c.word = j["word"].get<std::string>();
    parse_word(*c.word);
  }
  if (j.contains("mode")) {
    if (!j["mode"].is_string()) throw ConfigError("mode must be a string");
    c.symmetry_mode = j["mode"].get<std::string>();
    if (c.symmetry_mode != "relations" && c.symmetry_mode != "transport" && c.symmetry_mode != "both")
      throw ConfigError("mode must be relations, transport or both");
  }
  if (j.contains("trials")) c.trials = int_field(j, "trials");
  if (c.trials < 1) throw ConfigError("trials must be positive");
  if (j.contains("corrupt")) {
    const json& k = j["corrupt"];
    if (!k.is_object()) throw ConfigError("corrupt must be an object {m, n}");
    c.corrupt_cell = std::make_pair(int_field(k, "m"), int_field(k, "n"));
  }
  return c;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open configuration '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("configuration '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_run_config(j);
}

}  // namespace ucred

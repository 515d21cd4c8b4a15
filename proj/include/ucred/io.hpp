#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ucred/character.hpp"
#include "ucred/eigen_support.hpp"
#include "ucred/identities.hpp"
#include "ucred/integrator.hpp"
#include "ucred/lax.hpp"
#include "ucred/params.hpp"
#include "ucred/phase.hpp"
#include "ucred/symmetry.hpp"

namespace ucred {

using json = nlohmann::ordered_json;

std::string library_version();

// Rationals are written as "p/q" (or "p" when integral); integers and such
// strings are accepted on input. Anything else is a ConfigError.
json rational_to_json(const Rational& q);
Rational rational_from_json(const json& j, const std::string& where);
std::vector<Rational> rationals_from_json(const json& j, const std::string& where);
double number_from_json(const json& j, const std::string& where);

json params_to_json(const ParameterSet& ps);
ParameterSet params_from_json(const json& j);

json grid_to_json(const SigmaGrid& grid);
json report_to_json(const IdentityReport& r);
json reports_to_json(const std::vector<IdentityReport>& rs);
json matrix_to_json(const Mat<RationalFunction>& m);
json matrix_to_json(const Mat<Rational>& m);
json lax_to_json(const LaxData<RationalFunction>& lax);
json relation_to_json(const RelationResult& r);
json transport_to_json(const TransportResult& r);

// q and p as N rows of L-1 entries.
json point_to_json(const PhasePoint<Rational>& pt);
json point_to_json(const PhasePoint<double>& pt);
PhasePoint<Rational> point_from_json(const json& j, int L, int N);

// Validated run configuration. Parameters come either from cores (nu,
// nu_prime with theta) or from explicit e, kappa with theta.
struct RunConfig {
  json raw;
  int L = 0, N = 0;
  std::vector<Rational> theta;
  std::optional<CoreIndex> nu, nu_prime;
  ParameterSet params;
  unsigned long long seed = 1;
  // Optional pieces, validated when present.
  std::optional<PhasePoint<Rational>> point;
  std::optional<std::vector<Rational>> t_start;  // start on the rational solution at t
  std::vector<std::vector<double>> path;          // waypoints in s-space
  IntegratorOptions tolerances;
  int samples = 0;
  std::optional<std::string> word;
  std::string symmetry_mode = "relations";
  int trials = 20;
  std::optional<std::pair<int, int>> corrupt_cell;  // negative-control fixture
  bool has_cores() const { return nu.has_value(); }
};

RunConfig parse_run_config(const json& j);
RunConfig load_run_config(const std::string& path);

}  // namespace ucred

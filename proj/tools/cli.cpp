#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>

#include <CLI11.hpp>

#include "ucred/canonical.hpp"
#include "ucred/gsystem.hpp"
#include "ucred/integrator.hpp"
#include "ucred/io.hpp"
#include "ucred/lax.hpp"
#include "ucred/painleve.hpp"
#include "ucred/symmetry.hpp"

namespace ucred::cli {

namespace {

struct Options {
  std::string command;
  std::string config;
  std::string out = ".";
  std::optional<unsigned long long> seed;
  std::string mode;  // empty: command default
};

struct Context {
  Options opt;
  RunConfig cfg;
  unsigned long long seed = 1;
  std::mt19937_64 rng;
  std::ostream* out = nullptr;
  std::ostream* err = nullptr;
};

void require_mode(const Context& c, std::initializer_list<const char*> allowed) {
  for (const char* m : allowed)
    if (c.opt.mode == m) return;
  throw ConfigError(c.opt.command + " does not support --mode " + c.opt.mode);
}

void require_cores(const Context& c) {
  if (!c.cfg.has_cores()) throw ConfigError(c.opt.command + " needs cores nu and nu_prime in the configuration");
}

json base_report(const Context& c) {
  json r;
  r["command"] = c.opt.command;
  r["version"] = library_version();
  r["seed"] = c.seed;
  r["mode"] = c.opt.mode;
  r["config"] = c.cfg.raw;
  r["parameters"] = params_to_json(c.cfg.params);
  return r;
}

void write_json(const Context& c, const std::string& name, const json& j) {
  std::filesystem::create_directories(c.opt.out);
  std::ofstream f(std::filesystem::path(c.opt.out) / name);
  if (!f) throw std::runtime_error("cannot write " + name + " in " + c.opt.out);
  f << j.dump(2) << "\n";
}

Rational random_rational(std::mt19937_64& rng, int lo, int hi, int den) {
  std::uniform_int_distribution<int> nd(lo, hi), dd(1, den);
  return Rational(nd(rng), dd(rng));
}

// Distinct rationals away from 0 and 1.
std::vector<Rational> random_times(std::mt19937_64& rng, int N) {
  for (;;) {
    std::vector<Rational> s;
    for (int i = 0; i < N; ++i) s.push_back(random_rational(rng, 2, 30, 11));
    bool ok = true;
    for (int i = 0; i < N && ok; ++i) {
      if (s[i] == Rational(1)) ok = false;
      for (int j = i + 1; j < N; ++j)
        if (s[i] == s[j]) ok = false;
    }
    if (ok) return s;
  }
}

PhasePoint<Rational> random_point(std::mt19937_64& rng, int L, int N) {
  PhasePoint<Rational> pt(L, N);
  pt.s = random_times(rng, N);
  for (auto& q : pt.q) q = random_rational(rng, -9, 9, 7);
  for (auto& p : pt.p) p = random_rational(rng, -9, 9, 7);
  return pt;
}

SigmaFamily make_family(const Context& c) {
  SubstitutionContext ctx{c.cfg.L, c.cfg.N, c.cfg.theta};
  SigmaGrid grid(ctx, *c.cfg.nu, *c.cfg.nu_prime);
  if (c.cfg.corrupt_cell) {
    auto [m, n] = *c.cfg.corrupt_cell;
    // sigma + t_1^(d+1) breaks homogeneity and every identity the cell enters.
    LaurentPoly bad = grid.sigma(m, n) + LaurentPoly::var(1, grid.degree(m, n) + 1);
    grid.overwrite_cell(m, n, bad);
    *c.err << "warning: sigma_{" << m << "," << n << "} corrupted on request (negative control)\n";
  }
  return SigmaFamily(std::move(grid));
}

void append(std::vector<IdentityReport>& dst, const std::vector<IdentityReport>& src) {
  dst.insert(dst.end(), src.begin(), src.end());
}

json section(const std::string& name, const std::vector<IdentityReport>& rs) {
  int failed = 0;
  for (const auto& r : rs) failed += r.pass ? 0 : 1;
  return json{{"section", name}, {"checks", rs.size()}, {"failed", failed}, {"reports", reports_to_json(rs)}};
}

std::string first_failure(const std::vector<IdentityReport>& rs) {
  for (const auto& r : rs)
    if (!r.pass) return r.label();
  return "";
}

int finish(const Context& c, json report, const std::string& file, bool pass, const std::string& detail) {
  report["pass"] = pass;
  write_json(c, file, report);
  *c.out << c.opt.command << ": " << (pass ? "PASS" : "FAIL") << (detail.empty() ? "" : " (" + detail + ")") << "\n";
  return pass ? kPass : kIdentityFailure;
}

int cmd_certify(Context& c) {
  require_mode(c, {"exact"});
  require_cores(c);
  SigmaFamily fam = make_family(c);
  json report = base_report(c);
  report["grid"] = grid_to_json(fam.base());
  std::vector<std::pair<std::string, std::vector<IdentityReport>>> parts;
  parts.push_back({"bilinear", check_bilinear(fam)});
  parts.push_back({"toda", check_all_toda(fam)});
  parts.push_back({"difference", check_all_duc(fam)});
  GVariables gv = gvars_from_sigma(fam);
  UVArrays uv = uv_from_fg(gv);
  std::vector<IdentityReport> g = check_gvars(fam, gv);
  append(g, check_uv_relations(fam, gv, uv));
  append(g, g_system_residual(fam.base(), gv, uv));
  parts.push_back({"g-system", g});
  CanonicalSolution sol = canonical_from_sigma(fam);
  parts.push_back({"canonical", canonical_flow_residual(sol.params, sol.point)});
  LaxData<RationalFunction> lax = build_lax_from_sigma(fam);
  std::vector<IdentityReport> lx = check_lax_structure(lax);
  for (int i = 0; i <= c.cfg.N; ++i) lx.push_back(zero_curvature_residual(lax, i));
  append(lx, schlesinger_residual(lax));
  parts.push_back({"lax", lx});
  bool pass = true;
  std::string fail;
  report["sections"] = json::array();
  for (const auto& [name, rs] : parts) {
    report["sections"].push_back(section(name, rs));
    if (!all_pass(rs)) {
      pass = false;
      if (fail.empty()) fail = first_failure(rs);
    }
  }
  return finish(c, report, "certify.json", pass, pass ? "" : "first failure " + fail);
}

double path_length(const std::vector<std::vector<double>>& w) {
  double len = 0.0;
  for (std::size_t k = 1; k < w.size(); ++k) {
    double d = 0.0;
    for (std::size_t i = 0; i < w[k].size(); ++i) d += (w[k][i] - w[k - 1][i]) * (w[k][i] - w[k - 1][i]);
    len += std::sqrt(d);
  }
  return len;
}

double max_diff(const PhasePoint<double>& a, const PhasePoint<double>& b) {
  double d = 0.0;
  for (std::size_t k = 0; k < a.q.size(); ++k) {
    d = std::max(d, std::abs(a.q[k] - b.q[k]));
    d = std::max(d, std::abs(a.p[k] - b.p[k]));
  }
  return d;
}

int cmd_integrate(Context& c) {
  require_mode(c, {"float"});
  const RunConfig& cfg = c.cfg;
  std::optional<CanonicalSolution> sol;
  std::optional<SigmaFamily> fam;
  PhasePoint<double> pt0(cfg.L, cfg.N);
  if (cfg.t_start) {
    fam.emplace(make_family(c));
    sol = canonical_from_sigma(*fam);
    for (const auto& t : *cfg.t_start)
      if (t.is_zero()) throw ConfigError("t entries must be nonzero");
    PhasePoint<Rational> e = evaluate_solution(sol->point, *cfg.t_start);
    pt0.s.clear();
    for (const auto& x : e.s) pt0.s.push_back(x.to_double());
    for (std::size_t k = 0; k < e.q.size(); ++k) {
      pt0.q[k] = e.q[k].to_double();
      pt0.p[k] = e.p[k].to_double();
    }
  } else if (cfg.point) {
    for (int i = 0; i < cfg.N; ++i) pt0.s[i] = cfg.point->s[i].to_double();
    for (std::size_t k = 0; k < pt0.q.size(); ++k) {
      pt0.q[k] = cfg.point->q[k].to_double();
      pt0.p[k] = cfg.point->p[k].to_double();
    }
  } else {
    throw ConfigError("integrate needs an initial point ('point') or a solution time ('t')");
  }
  std::vector<std::vector<double>> path = cfg.path;
  if (path.empty()) path.push_back(pt0.s);
  for (int i = 0; i < cfg.N; ++i)
    if (std::abs(path[0][i] - pt0.s[i]) > 1e-12 * std::max(1.0, std::abs(pt0.s[i])))
      throw ConfigError("the first path waypoint must equal the initial s");
  path[0] = pt0.s;

  IntegratorOptions opt = cfg.tolerances;
  const double len = path_length(path);
  if (cfg.samples > 0 && len > 0)
    for (int k = 0; k <= cfg.samples; ++k) opt.samples.push_back(len * k / cfg.samples);

  json report = base_report(c);
  report["initial_point"] = point_to_json(pt0);
  Trajectory traj;
  try {
    traj = integrate(cfg.params, pt0, path, opt);
  } catch (const IntegrationError& e) {
    report["error"] = e.what();
    write_json(c, "integrate.json", report);
    throw;
  }
  {
    std::filesystem::create_directories(c.opt.out);
    std::ofstream csv(std::filesystem::path(c.opt.out) / "trajectory.csv");
    write_trajectory_csv(csv, traj);
  }
  json diag;
  diag["accepted_steps"] = traj.accepted;
  diag["rejected_steps"] = traj.rejected;
  diag["rhs_evaluations"] = traj.evaluations;
  diag["path_length"] = traj.length;
  diag["rtol"] = traj.rtol;
  diag["atol"] = traj.atol;
  diag["samples"] = traj.samples.size();
  if (traj.aborted) {
    diag["aborted"] = true;
    diag["message"] = traj.message;
    diag["last_good_param"] = traj.last_good_param;
    diag["last_good"] = point_to_json(traj.last_good);
    report["diagnostics"] = diag;
    report["pass"] = false;
    write_json(c, "integrate.json", report);
    *c.out << "integrate: ABORT (" << traj.message << ")\n";
    return kSingularAbort;
  }
  double trace_mismatch = 0.0;
  for (const auto& smp : traj.samples) {
    LaxData<double> lax = build_lax_from_point(cfg.params, smp.point);
    for (int i = 1; i <= cfg.N; ++i)
      trace_mismatch = std::max(trace_mismatch, std::abs(trace_hamiltonian(lax, i) - smp.H[i - 1]));
  }
  diag["max_trace_hamiltonian_mismatch"] = trace_mismatch;
  const PhasePoint<double>& end = traj.samples.back().point;
  diag["endpoint"] = point_to_json(end);
  bool pass = trace_mismatch <= 1e-8;
  if (sol) {
    std::vector<double> t_end;
    bool ok = true;
    for (int i = 0; i < cfg.N; ++i) {
      double ratio = end.s[i] / pt0.s[i];
      if (ratio <= 0) ok = false;
      t_end.push_back((*cfg.t_start)[i].to_double() * std::pow(ratio, 1.0 / cfg.L));
    }
    if (ok) {
      double err = max_diff(evaluate_solution(sol->point, t_end), end);
      diag["endpoint_error_vs_exact"] = err;
      pass = pass && err <= 1e-8;
    }
  }
  if (cfg.N >= 2 && len > 0) {
    // Coordinate-wise routes in opposite orders between the same endpoints.
    auto route = [&](bool forward) {
      std::vector<std::vector<double>> w{pt0.s};
      std::vector<double> cur = pt0.s;
      for (int k = 0; k < cfg.N; ++k) {
        int i = forward ? k : cfg.N - 1 - k;
        cur[i] = end.s[i];
        w.push_back(cur);
      }
      return integrate(cfg.params, pt0, w, cfg.tolerances);
    };
    Trajectory a = route(true), b = route(false);
    if (a.aborted || b.aborted) {
      diag["commutativity"] = "route left the safe region";
    } else {
      double comm = max_diff(a.samples.back().point, b.samples.back().point);
      diag["commutativity_error"] = comm;
      pass = pass && comm <= 1e-7;
    }
  }
  report["diagnostics"] = diag;
  return finish(c, report, "integrate.json", pass, "");
}

int cmd_symmetry(Context& c) {
  require_mode(c, {"exact", "float"});
  const RunConfig& cfg = c.cfg;
  json report = base_report(c);
  bool pass = true;
  std::string detail;
  const bool relations = cfg.symmetry_mode != "transport";
  const bool transport = cfg.symmetry_mode != "relations";
  if (relations && c.opt.mode == "exact") {
    auto rs = check_relations(cfg.L, cfg.N, cfg.trials, c.seed);
    json a = json::array();
    for (const auto& r : rs) {
      a.push_back(relation_to_json(r));
      if (!r.pass()) {
        pass = false;
        if (detail.empty()) detail = "relation " + r.relation;
      }
    }
    report["relations"] = a;
  }
  if (transport) {
    if (!cfg.word) throw ConfigError("transport needs a 'word'");
    SymmetryWord w = parse_word(*cfg.word);
    for (const auto& g : w) validate_generator(g, cfg.L, cfg.N);
    report["word"] = word_str(w);
    report["parameters_after"] = params_to_json(parameter_action(w, cfg.params));
    // Canonicity of every letter at random float points.
    double defect = 0.0;
    int evaluated = 0;
    for (const auto& g : w)
      for (int k = 0; k < cfg.trials; ++k) {
        PhasePoint<Rational> rp = random_point(c.rng, cfg.L, cfg.N);
        try {
          defect = std::max(defect, symplectic_defect(g, cfg.params, rp));
          ++evaluated;
        } catch (const IndeterminacyError&) {
        }
      }
    report["symplectic_defect"] = defect;
    report["symplectic_points"] = evaluated;
    if (defect > 1e-8) {
      pass = false;
      if (detail.empty()) detail = "symplectic defect";
    }
    if (c.opt.mode == "exact") {
      if (cfg.point) {
        SymState<Rational> img = apply(w, cfg.params, *cfg.point);
        report["image_point"] = point_to_json(img.point);
        SymState<Rational> in{cfg.params, *cfg.point};
        report["identity_on_point"] = same_state(img, in);
      }
      if (cfg.has_cores()) {
        SigmaFamily fam = make_family(c);
        CanonicalSolution sol = canonical_from_sigma(fam);
        std::vector<std::vector<Rational>> ts;
        for (int k = 0; k < cfg.trials; ++k) ts.push_back(random_times(c.rng, cfg.N));
        SolutionJets jets = solution_jets(sol.point, ts);
        TransportResult tr = transport_check(w, sol.params, jets);
        report["transport"] = transport_to_json(tr);
        if (!tr.pass()) {
          pass = false;
          if (detail.empty()) detail = "transport";
        }
      }
      if (!cfg.point && !cfg.has_cores()) throw ConfigError("transport needs a 'point' or cores");
    }
  }
  return finish(c, report, "symmetry.json", pass, detail);
}

int cmd_lax(Context& c) {
  require_mode(c, {"exact"});
  const RunConfig& cfg = c.cfg;
  json report = base_report(c);
  bool pass = true;
  std::string detail;
  auto note = [&](bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (detail.empty()) detail = what;
    }
  };
  int acc = accessory_count(spectral_type(cfg.L, cfg.N));
  report["accessory_parameters"] = acc;
  note(acc == 2 * cfg.N * (cfg.L - 1), "accessory count");
  auto scheme_json = [](const RiemannScheme& rs) {
    json rows = json::array();
    for (const auto& r : rs.rows) {
      json ex = json::array();
      for (const auto& x : r.exponents) ex.push_back(rational_to_json(x));
      rows.push_back(json{{"singularity", r.singularity}, {"exponents", ex}, {"pass", r.pass}});
    }
    return json{{"rows", rows}, {"relations", rs.relations}, {"fuchs", rs.fuchs}, {"triangular", rs.triangular}, {"pass", rs.pass()}};
  };
  if (cfg.has_cores()) {
    SigmaFamily fam = make_family(c);
    LaxData<RationalFunction> lax = build_lax_from_sigma(fam);
    std::vector<IdentityReport> rs = check_lax_structure(lax);
    for (int i = 0; i <= cfg.N; ++i) rs.push_back(zero_curvature_residual(lax, i));
    append(rs, schlesinger_residual(lax));
    report["v_gauge"] = section("v-gauge", rs);
    RiemannScheme scheme = riemann_scheme(lax);
    report["v_gauge_riemann_scheme"] = scheme_json(scheme);
    note(all_pass(rs), first_failure(rs));
    note(scheme.pass(), "riemann scheme");
    // The commutator-only form, for reference; not part of the verdict.
    std::vector<IdentityReport> plain = schlesinger_residual(lax, true);
    int plain_fail = 0;
    for (const auto& r : plain) plain_fail += r.pass ? 0 : 1;
    report["plain_schlesinger_failures"] = plain_fail;
    write_json(c, "lax_matrices.json", lax_to_json(lax));
  }
  if (cfg.point) {
    LaxData<Rational> lax = build_lax_from_point(cfg.params, *cfg.point);
    json qp;
    RiemannScheme scheme = riemann_scheme(lax);
    qp["riemann_scheme"] = scheme_json(scheme);
    note(scheme.pass(), "qp-gauge riemann scheme");
    bool lemma = true;
    for (const auto& r : lemma_trace_residuals(cfg.params, *cfg.point)) lemma = lemma && r.is_zero();
    qp["trace_lemma"] = lemma;
    note(lemma, "trace lemma");
    json h = json::array();
    for (int i = 1; i <= cfg.N; ++i) {
      Rational a = hamiltonian(cfg.params, *cfg.point, i), b = trace_hamiltonian(lax, i);
      h.push_back(json{{"i", i}, {"H", rational_to_json(a)}, {"trace", rational_to_json(b)}, {"equal", a == b}});
      note(a == b, "trace Hamiltonian");
    }
    qp["hamiltonians"] = h;
    report["qp_gauge"] = qp;
  }
  if (!cfg.has_cores() && !cfg.point) throw ConfigError("lax needs cores or a 'point'");
  return finish(c, report, "lax.json", pass, detail);
}

int cmd_pvi(Context& c) {
  require_mode(c, {"exact", "float"});
  const RunConfig& cfg = c.cfg;
  if (cfg.N != 1) throw PreconditionError("pvi-compare needs N = 1");
  json report = base_report(c);
  bool pass = true;
  if (cfg.L == 2) {
    PviParams a = pvi_dictionary(cfg.params);
    json d = json::array();
    for (const auto& x : a) d.push_back(rational_to_json(x));
    Rational sum = a[0] + a[1] + Rational(2) * a[2] + a[3] + a[4];
    report["dictionary"] = d;
    report["dictionary_sum"] = rational_to_json(sum);
    pass = pass && sum == Rational(1);
  }
  int bad = 0;
  double worst = 0.0;
  for (int k = 0; k < c.cfg.trials; ++k) {
    PhasePoint<Rational> pt = random_point(c.rng, cfg.L, 1);
    if (c.opt.mode == "exact") {
      bad += pvi_residual(cfg.params, pt).is_zero() ? 0 : 1;
    } else {
      PhasePoint<double> fp(cfg.L, 1);
      fp.s[0] = pt.s[0].to_double();
      for (std::size_t m = 0; m < fp.q.size(); ++m) {
        fp.q[m] = pt.q[m].to_double();
        fp.p[m] = pt.p[m].to_double();
      }
      double h = hamiltonian(cfg.params, fp, 1);
      worst = std::max(worst, std::abs(pvi_residual(cfg.params, fp)) / std::max(1.0, std::abs(h)));
    }
  }
  if (c.opt.mode == "exact") {
    LaurentPoly sym = pvi_symbolic_residual(cfg.params);
    report["symbolic_residual_terms"] = sym.size();
    report["point_failures"] = bad;
    pass = pass && sym.is_zero() && bad == 0;
  } else {
    report["max_relative_residual"] = worst;
    pass = pass && worst <= 1e-10;
  }
  return finish(c, report, "pvi-compare.json", pass, "");
}

int cmd_garnier(Context& c) {
  require_mode(c, {"exact"});
  const RunConfig& cfg = c.cfg;
  if (cfg.L != 2) throw PreconditionError("garnier-compare needs L = 2");
  json report = base_report(c);
  bool pass = true;
  int nonzero = 0, checked = 0, qp_fail = 0;
  for (int k = 0; k < cfg.trials; ++k) {
    std::vector<Rational> s = random_times(c.rng, cfg.N);
    for (int i = 1; i <= cfg.N; ++i) {
      for (const auto& d : garnier_residual_partials(cfg.params, s, i)) {
        ++checked;
        nonzero += d.is_zero() ? 0 : 1;
      }
    }
    PhasePoint<Rational> pt = random_point(c.rng, cfg.L, cfg.N);
    try {
      GarnierPoint<Rational> g = garnier_transform(cfg.params, pt);
      for (int i = 1; i <= cfg.N; ++i)
        if (!(g.point.Q(i, 1) * g.point.P(i, 1) + pt.Q(i, 1) * pt.P(i, 1)).is_zero()) ++qp_fail;
    } catch (const SingularityError&) {
    } catch (const DegenerateError&) {
    }
  }
  report["partials_checked"] = checked;
  report["nonzero_partials"] = nonzero;
  report["qp_product_failures"] = qp_fail;
  pass = nonzero == 0 && qp_fail == 0 && checked > 0;
  return finish(c, report, "garnier-compare.json", pass, "");
}

}  // namespace

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"ucred: universal-character reductions, Hamiltonian flows, Lax pairs and symmetries"};
  app.require_subcommand(1);
  app.set_version_flag("--version", library_version());
  std::string seed_text;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config, "JSON configuration file")->required();
    sub->add_option("--seed", seed_text, "random seed (unsigned 64-bit)");
    sub->add_option("--out", opt.out, "output directory");
    sub->add_option("--mode", opt.mode, "numeric mode")->check(CLI::IsMember({"exact", "float"}));
  };
  for (const char* name : {"certify", "integrate", "symmetry", "lax", "pvi-compare", "garnier-compare"}) {
    CLI::App* sub = app.add_subcommand(name, std::string("run ") + name);
    add_common(sub);
  }
  std::vector<std::string> args(argv.begin() + (argv.empty() ? 0 : 1), argv.end());
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForVersion&) {
    out << library_version() << "\n";
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  }
  opt.command = app.get_subcommands().front()->get_name();

  Context c;
  c.out = &out;
  c.err = &err;
  try {
    if (!seed_text.empty()) {
      std::size_t used = 0;
      unsigned long long v = 0;
      try {
        v = std::stoull(seed_text, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != seed_text.size() || seed_text[0] == '-') throw ConfigError("--seed must be an unsigned integer");
      opt.seed = v;
    }
    if (opt.mode.empty()) opt.mode = opt.command == "integrate" ? "float" : "exact";
    c.opt = opt;
    c.cfg = load_run_config(opt.config);
    c.seed = opt.seed ? *opt.seed : c.cfg.seed;
    c.rng.seed(c.seed);
    for (std::size_t i = 0; i < c.cfg.theta.size(); ++i)
      if (c.cfg.theta[i].is_zero()) err << "warning: theta_" << i << " = 0 gives degenerate solutions\n";
    if (opt.command == "certify") return cmd_certify(c);
    if (opt.command == "integrate") return cmd_integrate(c);
    if (opt.command == "symmetry") return cmd_symmetry(c);
    if (opt.command == "lax") return cmd_lax(c);
    if (opt.command == "pvi-compare") return cmd_pvi(c);
    return cmd_garnier(c);
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << "\n";
    return kConfigError;
  } catch (const PreconditionError& e) {
    err << "precondition: " << e.what() << "\n";
    return kConfigError;
  } catch (const SingularityError& e) {
    err << "singular: " << e.what() << "\n";
    return kSingularAbort;
  } catch (const std::exception& e) {
    err << "computation error: " << e.what() << "\n";
    return kComputationError;
  }
}

}  // namespace ucred::cli

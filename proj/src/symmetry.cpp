#include "ucred/symmetry.hpp"

#include <sstream>

#include "ucred/canonical.hpp"
#include "ucred/jet.hpp"

#include <random>
#include <sstream>

#include <Eigen/Core>
#include <unsupported/Eigen/AutoDiff>

namespace ucred {

constexpr int kMaxJet = 32;
using AD = Eigen::AutoDiffScalar<Eigen::Matrix<double, kMaxJet, 1>>;

template <>
struct ScalarTraits<AD> {
  static AD from(const Rational& q) { return AD(q.to_double()); }
  static bool is_zero(const AD& x) { return x.value() == 0.0; }
  static constexpr bool exact = false;
};

std::string Generator::str() const {
  switch (kind) {
    case r: return "r" + std::to_string(a);
    case r_prime: return "r" + std::to_string(a) + "'";
    case pi: return "pi";
    case rho: return "rho";
    case eta: return "eta" + std::to_string(a);
    case zeta: return "zeta" + std::to_string(a) + std::to_string(b);
    case iota: return "iota";
    case phi: return "phi";
  }
  return "?";
}

SymmetryWord parse_word(const std::string& text) {
  SymmetryWord w;
  std::stringstream ss(text);
  std::string tok;
  auto digits = [](const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
      if (c < '0' || c > '9') return false;
    return true;
  };
  while (std::getline(ss, tok, ',')) {
    while (!tok.empty() && tok.front() == ' ') tok.erase(tok.begin());
    while (!tok.empty() && tok.back() == ' ') tok.pop_back();
    if (tok.empty()) continue;
    Generator g;
    if (tok == "pi") g.kind = Generator::pi;
    else if (tok == "rho") g.kind = Generator::rho;
    else if (tok == "iota") g.kind = Generator::iota;
    else if (tok == "phi") g.kind = Generator::phi;
    else if (tok.rfind("eta", 0) == 0 && digits(tok.substr(3))) {
      g.kind = Generator::eta;
      g.a = std::stoi(tok.substr(3));
    } else if (tok.rfind("zeta", 0) == 0 && tok.size() == 6 && digits(tok.substr(4))) {
      g.kind = Generator::zeta;
      g.a = tok[4] - '0';
      g.b = tok[5] - '0';
    } else if (tok.size() >= 3 && tok[0] == 'r' && tok.back() == '\'' && digits(tok.substr(1, tok.size() - 2))) {
      g.kind = Generator::r_prime;
      g.a = std::stoi(tok.substr(1, tok.size() - 2));
    } else if (tok.size() >= 2 && tok[0] == 'r' && digits(tok.substr(1))) {
      g.kind = Generator::r;
      g.a = std::stoi(tok.substr(1));
    } else {
      throw ConfigError("unknown generator token '" + tok + "'");
    }
    w.push_back(g);
  }
  return w;
}

std::string word_str(const SymmetryWord& w) {
  std::string s;
  for (std::size_t k = 0; k < w.size(); ++k) s += (k ? "," : "") + w[k].str();
  return s;
}

void validate_generator(const Generator& g, int L, int N) {
  switch (g.kind) {
    case Generator::r:
    case Generator::r_prime:
      if (g.a < 0 || g.a >= L) throw PreconditionError(g.str() + ": index must lie in 0..L-1");
      break;
    case Generator::eta:
      if (g.a < 0 || g.a > N) throw PreconditionError(g.str() + ": index must lie in 0..N");
      break;
    case Generator::zeta:
      if (g.a == g.b || g.a < 0 || g.b < 0 || g.a > N || g.b > N)
        throw PreconditionError(g.str() + ": needs two distinct indices in 0..N");
      break;
    case Generator::phi:
      if (N != 1) throw PreconditionError("phi exists only for N = 1");
      break;
    default:
      break;
  }
}

namespace {

void add_e(ParameterSet& ps, int n, const Rational& d) { ps.e[mod_floor(n, ps.L())] += d; }
void add_k(ParameterSet& ps, int n, const Rational& d) { ps.kappa[mod_floor(n, ps.L())] += d; }

}  // namespace

namespace {

ParameterSet ek_action(const Generator& g, const ParameterSet& ps) {
  const int L = ps.L(), N = ps.N();
  validate_generator(g, L, N);
  ParameterSet out = ps;
  switch (g.kind) {
    case Generator::r: {
      Rational a = ps.a(g.a);
      add_e(out, g.a, a);
      add_e(out, g.a + 1, -a);
      add_k(out, g.a, a);
      add_k(out, g.a + 1, -a);
      break;
    }
    case Generator::r_prime: {
      Rational b = ps.b(g.a);
      add_k(out, L - g.a, b);
      add_k(out, L - g.a - 1, -b);
      break;
    }
    case Generator::pi:
      for (int n = 0; n < L; ++n) {
        out.e[n] = ps.e_ext(n + 1) - Rational(1, L);
        out.kappa[n] = ps.kappa_ext(n + 1);
      }
      break;
    case Generator::rho: {
      Rational st = ps.theta_sum() / Rational(L);
      for (int n = 0; n < L; ++n) {
        out.e[n] = ps.kappa_ext(L - n) - ps.e_ext(L - n) - st + Rational(1);
        out.kappa[n] = ps.kappa_ext(L - n);
      }
      break;
    }
    case Generator::eta:
      for (int n = 0; n < L; ++n) {
        out.e[n] = ps.e_ext(n - 1) + Rational(1, L);
        out.kappa[n] = ps.kappa[n] - ps.e[n] + ps.e_ext(n - 1);
      }
      out.theta[g.a] -= Rational(1);
      break;
    case Generator::zeta:
      std::swap(out.theta[g.a], out.theta[g.b]);
      break;
    case Generator::iota:
      for (int n = 0; n < L; ++n) {
        out.e[n] = Rational(1) - ps.e_ext(L - n);
        out.kappa[n] = -ps.kappa_ext(L - n);
      }
      for (auto& t : out.theta) t = -t;
      break;
    case Generator::phi: {
      out.e[0] = ps.kappa[0] - ps.e[0] - Rational(1);
      for (int n = 1; n < L; ++n) {
        out.e[n] = -ps.e[L - n];
        out.kappa[n] = -ps.kappa[L - n];
      }
      out.theta[1] = ps.kappa[0] - ps.theta[1];
      Rational sk;
      for (const auto& k : out.kappa) sk += k;
      out.theta[0] = sk - out.theta[1];
      Rational se;
      for (const auto& e : out.e) se += e;
      Rational shift = (Rational(L - 1, 2) - se) / Rational(L);
      for (auto& e : out.e) e += shift;
      break;
    }
  }
  out.check_invariants();
  return out;
}

}  // namespace

ParameterSet parameter_action(const Generator& g, const ParameterSet& ps) {
  ParameterSet out = ek_action(g, ps);
  if (g.kind != Generator::phi) {
    RootData want = root_action(g, root_data(ps)), got = root_data(out);
    if (want.a != got.a || want.b != got.b || want.theta != got.theta)
      throw ConsistencyError(g.str() + ": e/kappa action disagrees with the root-variable action");
  }
  return out;
}

ParameterSet parameter_action(const SymmetryWord& w, const ParameterSet& ps) {
  ParameterSet cur = ps;
  for (const auto& g : w) cur = parameter_action(g, cur);
  return cur;
}

RootData root_data(const ParameterSet& ps) { return {ps.a_all(), ps.b_all(), ps.theta}; }

RootData root_action(const Generator& g, const RootData& rd) {
  const int L = static_cast<int>(rd.a.size());
  const int N = static_cast<int>(rd.theta.size()) - 1;
  validate_generator(g, L, N);
  RootData out = rd;
  auto m = [L](int n) { return mod_floor(n, L); };
  switch (g.kind) {
    case Generator::r:
      out.a[m(g.a)] = -rd.a[m(g.a)];
      out.a[m(g.a + 1)] += rd.a[m(g.a)];
      out.a[m(g.a - 1)] += rd.a[m(g.a)];
      break;
    case Generator::r_prime:
      out.b[m(g.a)] = -rd.b[m(g.a)];
      out.b[m(g.a + 1)] += rd.b[m(g.a)];
      out.b[m(g.a - 1)] += rd.b[m(g.a)];
      break;
    case Generator::pi:
      for (int n = 0; n < L; ++n) {
        out.a[n] = rd.a[m(n + 1)];
        out.b[n] = rd.b[m(n - 1)];
      }
      break;
    case Generator::rho:
      std::swap(out.a, out.b);
      break;
    case Generator::eta:
      for (int n = 0; n < L; ++n) out.a[n] = rd.a[m(n - 1)];
      out.theta[g.a] -= Rational(1);
      break;
    case Generator::zeta:
      std::swap(out.theta[g.a], out.theta[g.b]);
      break;
    case Generator::iota:
      for (int n = 0; n < L; ++n) {
        out.a[n] = rd.a[m(L - 1 - n)];
        out.b[n] = rd.b[m(L - 1 - n)];
      }
      for (auto& t : out.theta) t = -t;
      break;
    case Generator::phi:
      throw PreconditionError("phi has no tabulated root-variable action");
  }
  return out;
}

std::vector<Generator> all_generators(int L, int N) {
  std::vector<Generator> g;
  for (int n = 0; n < L; ++n) g.push_back({Generator::r, n, 0});
  for (int n = 0; n < L; ++n) g.push_back({Generator::r_prime, n, 0});
  g.push_back({Generator::pi, 0, 0});
  g.push_back({Generator::rho, 0, 0});
  for (int i = 0; i <= N; ++i) g.push_back({Generator::eta, i, 0});
  for (int i = 0; i <= N; ++i)
    for (int j = i + 1; j <= N; ++j) g.push_back({Generator::zeta, i, j});
  g.push_back({Generator::iota, 0, 0});
  if (N == 1) g.push_back({Generator::phi, 0, 0});
  return g;
}

namespace {

Rational rnd(std::mt19937_64& rng, int lo, int hi, int den) {
  std::uniform_int_distribution<int> nd(lo, hi), dd(1, den);
  return Rational(nd(rng), dd(rng));
}

ParameterSet random_params(std::mt19937_64& rng, int L, int N) {
  ParameterSet ps;
  for (int i = 0; i <= N; ++i) ps.theta.push_back(rnd(rng, -9, 9, 7));
  Rational se, sk;
  for (int n = 0; n + 1 < L; ++n) {
    ps.e.push_back(rnd(rng, -9, 9, 7));
    ps.kappa.push_back(rnd(rng, -9, 9, 7));
    se += ps.e.back();
    sk += ps.kappa.back();
  }
  ps.e.push_back(Rational(L - 1, 2) - se);
  ps.kappa.push_back(ps.theta_sum() - sk);
  return ps;
}

PhasePoint<Rational> random_point(std::mt19937_64& rng, int L, int N) {
  PhasePoint<Rational> pt(L, N);
  for (;;) {
    for (auto& s : pt.s) s = rnd(rng, -20, 20, 9);
    bool ok = true;
    for (int i = 0; i < N && ok; ++i) {
      if (pt.s[i].is_zero() || pt.s[i] == Rational(1)) ok = false;
      for (int j = i + 1; j < N; ++j)
        if (pt.s[i] == pt.s[j]) ok = false;
    }
    if (ok) break;
  }
  for (auto& q : pt.q) q = rnd(rng, -9, 9, 5);
  for (auto& p : pt.p) p = rnd(rng, -9, 9, 5);
  return pt;
}

}  // namespace

std::vector<RelationResult> check_relations(int L, int N, int trials, unsigned long long seed) {
  using G = Generator;
  std::vector<std::pair<std::string, std::pair<SymmetryWord, SymmetryWord>>> rel;
  auto R = [](int n) { return G{G::r, n, 0}; };
  auto Rp = [](int n) { return G{G::r_prime, n, 0}; };
  const G PI{G::pi, 0, 0}, RHO{G::rho, 0, 0};
  auto md = [L](int n) { return mod_floor(n, L); };
  for (int n = 0; n < L; ++n) {
    rel.push_back({"r" + std::to_string(n) + "^2", {{R(n), R(n)}, {}}});
    rel.push_back({"r" + std::to_string(n) + "'^2", {{Rp(n), Rp(n)}, {}}});
    if (L >= 3) {
      SymmetryWord w, wp;
      for (int k = 0; k < 3; ++k) {
        w.push_back(R(n));
        w.push_back(R(md(n + 1)));
        wp.push_back(Rp(n));
        wp.push_back(Rp(md(n + 1)));
      }
      rel.push_back({"(r" + std::to_string(n) + " r" + std::to_string(md(n + 1)) + ")^3", {w, {}}});
      rel.push_back({"(r" + std::to_string(n) + "' r" + std::to_string(md(n + 1)) + "')^3", {wp, {}}});
    }
    rel.push_back({"pi r" + std::to_string(n) + " = r" + std::to_string(md(n + 1)) + " pi", {{PI, R(n)}, {R(md(n + 1)), PI}}});
    rel.push_back({"pi r" + std::to_string(n) + "' = r" + std::to_string(md(n - 1)) + "' pi",
                   {{PI, Rp(n)}, {Rp(md(n - 1)), PI}}});
    rel.push_back({"rho r" + std::to_string(n) + " = r" + std::to_string(n) + "' rho", {{RHO, R(n)}, {Rp(n), RHO}}});
    for (int m = 0; m < L; ++m)
      rel.push_back({"r" + std::to_string(m) + " r" + std::to_string(n) + "' = r" + std::to_string(n) + "' r" +
                         std::to_string(m),
                     {{R(m), Rp(n)}, {Rp(n), R(m)}}});
  }
  rel.push_back({"pi^" + std::to_string(L), {SymmetryWord(L, PI), {}}});
  rel.push_back({"rho^2", {{RHO, RHO}, {}}});

  std::mt19937_64 rng(seed);
  std::vector<RelationResult> out;
  for (auto& r : rel) out.push_back({r.first, 0, 0, 0});
  for (int t = 0; t < trials; ++t) {
    ParameterSet ps = random_params(rng, L, N);
    PhasePoint<Rational> pt = random_point(rng, L, N);
    for (std::size_t k = 0; k < rel.size(); ++k) {
      ++out[k].trials;
      try {
        auto lhs = apply(rel[k].second.first, ps, pt);
        auto rhs = apply(rel[k].second.second, ps, pt);
        if (same_state(lhs, rhs)) ++out[k].passed;
      } catch (const IndeterminacyError&) {
        ++out[k].skipped;
      }
    }
  }
  return out;
}

double symplectic_defect(const Generator& g, const ParameterSet& ps, const PhasePoint<double>& pt) {
  const int d = pt.dim();
  if (2 * d > kMaxJet) throw PreconditionError("symplectic_defect: phase space too large");
  PhasePoint<AD> x(pt.L, pt.N);
  for (int k = 0; k < pt.N; ++k) x.s[k] = AD(pt.s[k]);
  for (int k = 0; k < d; ++k) {
    x.q[k] = AD(pt.q[k], kMaxJet, k);
    x.p[k] = AD(pt.p[k], kMaxJet, d + k);
  }
  PhasePoint<AD> y = point_action(g, ps, x);
  Eigen::MatrixXd J(2 * d, 2 * d);
  for (int k = 0; k < d; ++k) {
    J.row(k) = y.q[k].derivatives().head(2 * d).transpose();
    J.row(d + k) = y.p[k].derivatives().head(2 * d).transpose();
  }
  Eigen::MatrixXd W = Eigen::MatrixXd::Zero(2 * d, 2 * d);
  W.topRightCorner(d, d) = Eigen::MatrixXd::Identity(d, d);
  W.bottomLeftCorner(d, d) = -Eigen::MatrixXd::Identity(d, d);
  Eigen::MatrixXd D = J.transpose() * W * J - W;
  return D.cwiseAbs().maxCoeff();
}

double symplectic_defect(const Generator& g, const ParameterSet& ps, const PhasePoint<Rational>& pt) {
  point_action(g, ps, pt);
  PhasePoint<double> fp(pt.L, pt.N);
  for (int k = 0; k < pt.N; ++k) fp.s[k] = pt.s[k].to_double();
  for (std::size_t k = 0; k < pt.q.size(); ++k) {
    fp.q[k] = pt.q[k].to_double();
    fp.p[k] = pt.p[k].to_double();
  }
  return symplectic_defect(g, ps, fp);
}

std::vector<IdentityReport> transport_residual(const Generator& g, const ParameterSet& ps,
                                               const PhasePoint<RationalFunction>& sol) {
  SymState<RationalFunction> st = apply(g, ps, sol);
  return canonical_flow_residual(st.params, st.point);
}

SolutionJets solution_jets(const PhasePoint<RationalFunction>& sol, const std::vector<std::vector<Rational>>& t_points) {
  const int N = sol.N;
  SolutionJets out;
  auto grad = [&](const RationalFunction& f) {
    std::vector<RationalFunction> d;
    for (int k = 1; k <= N; ++k) d.push_back(derivative(f, k));
    return d;
  };
  std::vector<std::vector<RationalFunction>> ds, dq, dp;
  for (const auto& f : sol.s) ds.push_back(grad(f));
  for (std::size_t k = 0; k < sol.q.size(); ++k) {
    dq.push_back(grad(sol.q[k]));
    dp.push_back(grad(sol.p[k]));
  }
  auto lift = [&](const RationalFunction& f, const std::vector<RationalFunction>& g, std::span<const Rational> x) {
    std::vector<Rational> d;
    for (const auto& gk : g) d.push_back(gk.evaluate(x));
    return Jet(f.evaluate(x), std::move(d));
  };
  for (const auto& t : t_points) {
    if (static_cast<int>(t.size()) != N) throw PreconditionError("solution_jets: expected one t value per flow");
    std::vector<Rational> x(N + 1, Rational(1));
    for (int k = 0; k < N; ++k) x[k + 1] = t[k];
    try {
      PhasePoint<Jet> jp(sol.L, N);
      for (std::size_t k = 0; k < sol.s.size(); ++k) jp.s[k] = lift(sol.s[k], ds[k], x);
      for (std::size_t k = 0; k < sol.q.size(); ++k) {
        jp.q[k] = lift(sol.q[k], dq[k], x);
        jp.p[k] = lift(sol.p[k], dp[k], x);
      }
      PhasePoint<Rational> v(sol.L, N);
      for (std::size_t k = 0; k < v.s.size(); ++k) v.s[k] = jp.s[k].value();
      check_singular_locus(v);
      out.points.push_back(std::move(jp));
    } catch (const std::exception&) {
      ++out.dropped;
    }
  }
  return out;
}

TransportResult transport_check(const Generator& g, const ParameterSet& ps, const SolutionJets& jets) {
  return transport_check(SymmetryWord{g}, ps, jets);
}

TransportResult transport_check(const SymmetryWord& w, const ParameterSet& ps, const SolutionJets& jets) {
  TransportResult res;
  res.generator = word_str(w);
  ParameterSet ps2 = parameter_action(w, ps);
  for (const auto& jp : jets.points) {
    const int N = jp.N;
    ++res.points;
    try {
      PhasePoint<Jet> img = apply(w, ps, jp).point;
      PhasePoint<Rational> v(jp.L, N);
      for (std::size_t k = 0; k < v.s.size(); ++k) v.s[k] = img.s[k].value();
      for (std::size_t k = 0; k < v.q.size(); ++k) {
        v.q[k] = img.q[k].value();
        v.p[k] = img.p[k].value();
      }
      std::vector<FlowVector<Rational>> fv;
      for (int j = 1; j <= N; ++j) fv.push_back(vector_field(ps2, v, j));
      bool ok = true;
      for (int k = 0; k < N && ok; ++k)
        for (std::size_t m = 0; m < v.q.size() && ok; ++m) {
          Rational rq = img.q[m].d(k), rp = img.p[m].d(k);
          for (int j = 1; j <= N; ++j) {
            Rational ds = img.s[j - 1].d(k);
            rq -= ds * fv[j - 1].dq[m];
            rp -= ds * fv[j - 1].dp[m];
          }
          if (!rq.is_zero() || !rp.is_zero()) {
            ok = false;
            std::ostringstream os;
            os << "t_" << (k + 1) << " coordinate " << m << ": residual " << (rq.is_zero() ? rp : rq);
            res.first_failure = os.str();
          }
        }
      if (ok) ++res.passed;
    } catch (const IndeterminacyError&) {
      ++res.skipped;
    } catch (const SingularityError&) {
      ++res.skipped;
    } catch (const DegenerateError&) {
      ++res.skipped;
    }
  }
  return res;
}

}  // namespace ucred

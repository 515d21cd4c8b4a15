#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ucred/errors.hpp"
#include "ucred/identities.hpp"
#include "ucred/jet.hpp"
#include "ucred/params.hpp"
#include "ucred/phase.hpp"

namespace ucred {

struct Generator {
  enum Kind { r, r_prime, pi, rho, eta, zeta, iota, phi };
  Kind kind = r;
  int a = 0, b = 0;  // n for r/r'; i for eta; (i, j) for zeta
  std::string str() const;
  friend bool operator==(const Generator&, const Generator&) = default;
};

// Comma-separated tokens "r1", "r0'", "pi", "rho", "eta2", "zeta01", "iota",
// "phi". Words compose as substitutions: in "w1,w2" the point map of w1 is
// applied first, so the composite pulls back functions as w1(w2(f)).
using SymmetryWord = std::vector<Generator>;
SymmetryWord parse_word(const std::string& text);
std::string word_str(const SymmetryWord& w);

// Throws PreconditionError if the generator does not exist for (L, N).
void validate_generator(const Generator& g, int L, int N);

// Action on (e, kappa, theta). phi is followed by the uniform shift of e
// that restores sum e = (L-1)/2; such a shift changes H_i only by a
// function of s.
ParameterSet parameter_action(const Generator& g, const ParameterSet& ps);
ParameterSet parameter_action(const SymmetryWord& w, const ParameterSet& ps);

// Action on the root variables (a_n, b_n, theta) as tabulated for every
// generator except phi; parameter_action asserts agreement with it. For iota
// the index is a_{L-1-n}, b_{L-1-n}: that is what the e/kappa action implies
// through a_n = e_{n+1} - e_n.
struct RootData {
  std::vector<Rational> a, b, theta;
  friend bool operator==(const RootData&, const RootData&) = default;
};
RootData root_data(const ParameterSet& ps);
RootData root_action(const Generator& g, const RootData& rd);

template <class S>
struct SymState {
  ParameterSet params;
  PhasePoint<S> point;
};

namespace detail {

template <class S>
const S& nonzero(const S& x, const char* what) {
  if (scalar_is_zero(x)) throw IndeterminacyError(std::string("indeterminacy: ") + what + " vanishes");
  return x;
}

template <class S>
S rat(const Rational& q) {
  return from_rational<S>(q);
}

}  // namespace detail

template <class S>
PhasePoint<S> point_action(const Generator& g, const ParameterSet& ps, const PhasePoint<S>& pt) {
  using detail::nonzero;
  using detail::rat;
  const int L = pt.L, N = pt.N;
  validate_generator(g, L, N);
  ExtendedPhaseView<S> x(ps, pt);
  PhasePoint<S> out = pt;
  S one(1);
  switch (g.kind) {
    case Generator::r: {
      const int n = g.a;
      S an = rat<S>(ps.a(n));
      if (n != 0) {
        S E(0);
        for (int j = 0; j <= N; ++j) E += x.q(j, n + 1) * x.p(j, n);
        S D = an + E;
        nonzero(D, "a_n + sum_j q_{n+1} p_n");
        nonzero(E, "sum_j q_{n+1} p_n");
        for (int i = 1; i <= N; ++i) {
          out.Q(i, n) = x.q(i, n) + an * (x.q(i, n + 1) - x.q(i, n)) / D;
          out.P(i, n) = x.p(i, n) * (one + an / E);
          if (n + 1 < L) out.P(i, n + 1) = x.p(i, n + 1) - an * x.p(i, n) / E;
        }
      } else {
        S F(0);
        for (int j = 0; j <= N; ++j) F += x.q(j, 1) * x.p(j, 0);
        nonzero(F, "sum_j q_1 p_0");
        S D = nonzero(S(an + F), "a_0 + sum_j q_1 p_0");
        for (int i = 1; i <= N; ++i) {
          S q1 = x.q(i, 1);
          S Dq = nonzero(S(an * q1 + F), "a_0 q_1 + sum_j q_1 p_0");
          S fq = one - an * (q1 - one) / Dq;
          S fp = one + an * (q1 - one) / D;
          for (int n = 1; n < L; ++n) {
            out.Q(i, n) = x.q(i, n) * fq;
            out.P(i, n) = n == 1 ? S((x.p(i, 1) - an * x.p(i, 0) / F) * fp) : S(x.p(i, n) * fp);
          }
        }
      }
      break;
    }
    case Generator::r_prime: {
      const int n = g.a;
      S bn = rat<S>(ps.b(n));
      if (n != 0) {
        const int k = L - n;
        S G(0);
        for (int j = 0; j <= N; ++j) G += x.q(j, k - 1) * x.p(j, k);
        S D = nonzero(S(bn + G), "b_n + sum_j q_{L-n-1} p_{L-n}");
        nonzero(G, "sum_j q_{L-n-1} p_{L-n}");
        for (int i = 1; i <= N; ++i) {
          out.Q(i, k) = x.q(i, k) + bn * (x.q(i, k - 1) - x.q(i, k)) / D;
          out.P(i, k) = x.p(i, k) * (one + bn / G);
          if (k - 1 >= 1) out.P(i, k - 1) = x.p(i, k - 1) - bn * x.p(i, k) / G;
        }
      } else {
        S M(0);
        for (int j = 0; j <= N; ++j) M += x.q(j, -1) * x.p(j, 0);
        nonzero(M, "sum_j q_{-1} p_0");
        S D = nonzero(S(bn + M), "b_0 + sum_j q_{-1} p_0");
        for (int i = 1; i <= N; ++i) {
          S qm = x.q(i, -1);
          S Dq = nonzero(S(bn * qm + M), "b_0 q_{-1} + sum_j q_{-1} p_0");
          S fq = one - bn * (qm - one) / Dq;
          S fp = one + bn * (qm - one) / D;
          for (int n = 1; n < L; ++n) {
            out.Q(i, n) = x.q(i, n) * fq;
            out.P(i, n) = n == L - 1 ? S((x.p(i, -1) - bn * x.p(i, 0) / M) * fp / x.s(i)) : S(x.p(i, n) * fp);
          }
        }
      }
      break;
    }
    case Generator::pi:
      for (int i = 1; i <= N; ++i) {
        S q1 = nonzero(x.q(i, 1), "q_1");
        for (int n = 1; n < L; ++n) {
          out.Q(i, n) = x.q(i, n + 1) / q1;
          out.P(i, n) = x.p(i, n + 1) * q1;
        }
      }
      break;
    case Generator::rho:
      for (int i = 1; i <= N; ++i) {
        S s = x.s(i);
        out.s[i - 1] = one / s;
        for (int n = 1; n < L; ++n) {
          out.Q(i, n) = x.q(i, L - n) / s;
          out.P(i, n) = s * x.p(i, L - n);
        }
      }
      break;
    case Generator::eta: {
      const int i = g.a;
      // sum_{m=1}^{L} p_{n-m}^(i) q_{n-m}^(j) and sum_{m=1}^{L} p_{n-m}^(i).
      auto cross = [&](int n, int j) {
        S acc(0);
        for (int m = 1; m <= L; ++m) acc += x.p(i, n - m) * x.q(j, n - m);
        return acc;
      };
      auto psum = [&](int n) {
        S acc(0);
        for (int m = 1; m <= L; ++m) acc += x.p(i, n - m);
        return acc;
      };
      S P0 = psum(0);
      std::vector<std::vector<S>> Qn(N + 1, std::vector<S>(L, S(0))), QPn = Qn;
      for (int j = 0; j <= N; ++j) {
        S C0 = nonzero(cross(0, j), "sum_m p_{-m}^(i) q_{-m}^(j)");
        for (int n = 1; n < L; ++n) {
          S Pn = nonzero(psum(n), "sum_m p_{n-m}^(i)");
          S Cn = cross(n, j);
          Qn[j][n] = P0 * Cn / (Pn * C0);
          if (j != i) {
            S pin = nonzero(x.p(i, n), "p_n^(i)");
            S pin1 = nonzero(x.p(i, n - 1), "p_{n-1}^(i)");
            S d = nonzero(S(x.s(i) - x.s(j)), "s_i - s_j");
            QPn[j][n] = x.s(j) / d * (x.p(j, n) / pin - x.p(j, n - 1) / pin1) * Cn;
          }
        }
      }
      for (int n = 1; n < L; ++n) {
        S acc = rat<S>(ps.kappa_ext(n) - ps.e_ext(n) + ps.e_ext(n - 1));
        for (int j = 0; j <= N; ++j)
          if (j != i) acc -= QPn[j][n];
        QPn[i][n] = acc;
      }
      for (int j = 1; j <= N; ++j)
        for (int n = 1; n < L; ++n) {
          out.Q(j, n) = Qn[j][n];
          out.P(j, n) = QPn[j][n] / nonzero(Qn[j][n], "eta_i(q_n^(j))");
        }
      break;
    }
    case Generator::zeta: {
      int i = g.a, j = g.b;
      if (i > j) std::swap(i, j);
      if (i != 0) {
        std::swap(out.s[i - 1], out.s[j - 1]);
        for (int n = 1; n < L; ++n) {
          std::swap(out.Q(i, n), out.Q(j, n));
          std::swap(out.P(i, n), out.P(j, n));
        }
      } else {
        const int k = j;  // zeta_{k0}
        S sk = nonzero(x.s(k), "s_i");
        for (int m = 1; m <= N; ++m) out.s[m - 1] = m == k ? S(one / sk) : S(x.s(m) / sk);
        for (int n = 1; n < L; ++n) {
          S qk = nonzero(x.q(k, n), "q_n^(i)");
          for (int m = 1; m <= N; ++m) {
            if (m == k) {
              out.Q(m, n) = one / qk;
              out.P(m, n) = qk * x.p(0, n);
            } else {
              out.Q(m, n) = x.q(m, n) / qk;
              out.P(m, n) = qk * x.p(m, n);
            }
          }
        }
      }
      break;
    }
    case Generator::iota: {
      S p00 = nonzero(x.p(0, 0), "p_0^(0)");
      for (int i = 1; i <= N; ++i) {
        S pi0 = nonzero(x.p(i, 0), "p_0^(i)");
        for (int n = 1; n < L; ++n) {
          S p0n = nonzero(x.p(0, L - n), "p_{L-n}^(0)");
          out.Q(i, n) = x.s(i) * x.p(i, L - n) * p00 / (p0n * pi0);
          out.P(i, n) = -x.q(i, L - n) * pi0 * p0n / (x.s(i) * p00);
        }
      }
      break;
    }
    case Generator::phi: {
      S s = x.s(1);
      for (int n = 1; n < L; ++n) {
        S qn = x.q(1, L - n), pn = x.p(1, L - n), kn = rat<S>(ps.kappa_ext(L - n));
        S d = nonzero(S(qn * pn - kn), "q_{L-n} p_{L-n} - kappa_{L-n}");
        out.Q(1, n) = s * pn / d;
        out.P(1, n) = -qn * d / s;
      }
      break;
    }
  }
  return out;
}

template <class S>
SymState<S> apply(const Generator& g, const ParameterSet& ps, const PhasePoint<S>& pt) {
  return {parameter_action(g, ps), point_action(g, ps, pt)};
}

template <class S>
SymState<S> apply(const SymmetryWord& w, const ParameterSet& ps, const PhasePoint<S>& pt) {
  SymState<S> st{ps, pt};
  for (const auto& g : w) st = apply(g, st.params, st.point);
  return st;
}

template <class S>
bool same_state(const SymState<S>& a, const SymState<S>& b) {
  if (!(a.params == b.params)) return false;
  for (std::size_t k = 0; k < a.point.s.size(); ++k)
    if (!scalar_is_zero(S(a.point.s[k] - b.point.s[k]))) return false;
  for (std::size_t k = 0; k < a.point.q.size(); ++k)
    if (!scalar_is_zero(S(a.point.q[k] - b.point.q[k])) || !scalar_is_zero(S(a.point.p[k] - b.point.p[k])))
      return false;
  return true;
}

struct RelationResult {
  std::string relation;
  int trials = 0, passed = 0, skipped = 0;  // skipped: indeterminacy hit
  bool pass() const { return trials > 0 && passed + skipped == trials && passed > 0; }
};

// Group relations at random rational points and parameters.
std::vector<RelationResult> check_relations(int L, int N, int trials, unsigned long long seed);

// All generators available for (L, N).
std::vector<Generator> all_generators(int L, int N);

// max |J^T Omega J - Omega| for the point map at a float point (s fixed).
double symplectic_defect(const Generator& g, const ParameterSet& ps, const PhasePoint<double>& pt);
// Same at the float image of an exact point; throws IndeterminacyError when
// the exact map is undefined there, where rounding would hide the pole.
double symplectic_defect(const Generator& g, const ParameterSet& ps, const PhasePoint<Rational>& pt);

// Transport of an exact solution (functions of t, t_0 = 1) by a generator.
// The symbolic form returns the flow residuals of the image; the pointwise
// form checks the same equations exactly at the given t values using
// first-order jets, which avoids building the image symbolically.
std::vector<IdentityReport> transport_residual(const Generator& g, const ParameterSet& ps,
                                               const PhasePoint<RationalFunction>& sol);

struct TransportResult {
  std::string generator;
  int points = 0, passed = 0, skipped = 0;  // skipped: indeterminacy or singular image
  std::string first_failure;
  bool pass() const { return passed > 0 && passed + skipped == points; }
};

// Values and t-gradients of an exact solution at sample points. Points where
// the solution itself is singular are dropped and counted.
struct SolutionJets {
  std::vector<PhasePoint<Jet>> points;
  int dropped = 0;
};
SolutionJets solution_jets(const PhasePoint<RationalFunction>& sol, const std::vector<std::vector<Rational>>& t_points);

TransportResult transport_check(const Generator& g, const ParameterSet& ps, const SolutionJets& jets);
TransportResult transport_check(const SymmetryWord& w, const ParameterSet& ps, const SolutionJets& jets);

}  // namespace ucred

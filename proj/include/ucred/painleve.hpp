#pragma once

#include <array>
#include <vector>

#include "ucred/errors.hpp"
#include "ucred/laurent.hpp"
#include "ucred/params.hpp"
#include "ucred/phase.hpp"

namespace ucred {

// Parameters (a_0..a_4) of the sixth Painleve Hamiltonian.
using PviParams = std::array<Rational, 5>;

// Dictionary for the n-th coupled block of the N = 1 system; n = 1 gives the
// single P_VI of the L = 2 case.
PviParams pvi_dictionary(const ParameterSet& ps, int n = 1);

// H_VI, from s(s-1)H_VI = q(q-1)(q-s)p^2 - ((a0-1)q(q-1) + a3 q(q-s) + a4(q-1)(q-s))p + a2(a1+a2)q.
template <class S>
S hamiltonian_pvi(const PviParams& a, const S& q, const S& p, const S& s) {
  S a0 = from_rational<S>(a[0]), a1 = from_rational<S>(a[1]), a2 = from_rational<S>(a[2]);
  S a3 = from_rational<S>(a[3]), a4 = from_rational<S>(a[4]);
  S one(1);
  S lin = (a0 - one) * q * (q - one) + a3 * q * (q - s) + a4 * (q - one) * (q - s);
  S num = q * (q - one) * (q - s) * p * p - lin * p + a2 * (a1 + a2) * q;
  return num / (s * (s - one));
}

// theta(e_0(s-1) + kappa_0 - theta)/(s(s-1)).
template <class S>
S pvi_s_term(const ParameterSet& ps, const S& s) {
  S th = from_rational<S>(ps.theta[1]), e0 = from_rational<S>(ps.e[0]), k0 = from_rational<S>(ps.kappa[0]);
  S one(1);
  return th * (e0 * (s - one) + k0 - th) / (s * (s - one));
}

// Coupled form: sum of P_VI blocks, the s-term and the interaction sum.
// For L = 2 this is the single P_VI form.
template <class S>
S coupled_pvi_hamiltonian(const ParameterSet& ps, const PhasePoint<S>& pt) {
  if (pt.N != 1) throw PreconditionError("the P_VI form requires N = 1");
  const int L = pt.L;
  const S& s = pt.s[0];
  S one(1);
  S h = pvi_s_term(ps, s);
  for (int n = 1; n < L; ++n) h += hamiltonian_pvi(pvi_dictionary(ps, n), pt.Q(1, n), pt.P(1, n), s);
  S inter(0);
  for (int m = 1; m < L; ++m)
    for (int n = m + 1; n < L; ++n) {
      const S &qm = pt.Q(1, m), &pm = pt.P(1, m), &qn = pt.Q(1, n), &pn = pt.P(1, n);
      S km = from_rational<S>(ps.kappa[m]), kn = from_rational<S>(ps.kappa[n]);
      inter += (qm - one) * pm * qn * ((qn - s) * pn - kn) + (qn - s) * pn * qm * ((qm - one) * pm - km);
    }
  return h + inter / (s * (s - one));
}

template <class S>
S pvi_residual(const ParameterSet& ps, const PhasePoint<S>& pt) {
  return hamiltonian(ps, pt, 1) - coupled_pvi_hamiltonian(ps, pt);
}

// Exact residual with q, p, s kept symbolic (variables q_1..q_{L-1},
// p_1..p_{L-1}, s in that order); zero means the identity holds
// identically for the given constants.
LaurentPoly pvi_symbolic_residual(const ParameterSet& ps);

// Variables of the interchanged-role canonical transformation.
template <class S>
struct GarnierPoint {
  PhasePoint<S> point;   // (Q, P, s)
  std::vector<S> Htilde;  // H_i - sum_n q_n p_n / s_i
};

template <class S>
GarnierPoint<S> garnier_transform(const ParameterSet& ps, const PhasePoint<S>& pt) {
  ExtendedPhaseView<S> x(ps, pt);
  GarnierPoint<S> out{PhasePoint<S>(pt.L, pt.N), {}};
  out.point.s = pt.s;
  for (int n = 1; n < pt.L; ++n) {
    S p0 = x.p(0, n);
    if (scalar_is_zero(p0)) throw SingularityError("p_" + std::to_string(n) + "^(0) vanishes");
    for (int i = 1; i <= pt.N; ++i) {
      S Q = -pt.s[i - 1] * pt.P(i, n) / p0;
      out.point.Q(i, n) = Q;
      if (scalar_is_zero(Q)) throw SingularityError("Q_" + std::to_string(n) + "^(" + std::to_string(i) + ") vanishes");
      out.point.P(i, n) = -pt.Q(i, n) * pt.P(i, n) / Q;
    }
  }
  for (int i = 1; i <= pt.N; ++i) {
    S acc = hamiltonian(ps, pt, i);
    for (int n = 1; n < pt.L; ++n) acc -= pt.Q(i, n) * pt.P(i, n) / pt.s[i - 1];
    out.Htilde.push_back(acc);
  }
  return out;
}

// Inverse map: p_n^(0) = kappa_n + sum_j Q_n^j P_n^j, p = -Q p^(0)/s, q = s P/p^(0).
template <class S>
PhasePoint<S> garnier_inverse(const ParameterSet& ps, const PhasePoint<S>& QP) {
  PhasePoint<S> pt(QP.L, QP.N);
  pt.s = QP.s;
  for (int n = 1; n < QP.L; ++n) {
    S p0 = from_rational<S>(ps.kappa[n]);
    for (int j = 1; j <= QP.N; ++j) p0 += QP.Q(j, n) * QP.P(j, n);
    if (scalar_is_zero(p0)) throw SingularityError("p_" + std::to_string(n) + "^(0) vanishes");
    for (int i = 1; i <= QP.N; ++i) {
      pt.P(i, n) = -QP.Q(i, n) * p0 / QP.s[i - 1];
      pt.Q(i, n) = QP.s[i - 1] * QP.P(i, n) / p0;
    }
  }
  return pt;
}

// s_i(s_i-1) times the L = 2 Garnier Hamiltonian in the displayed
// polynomial form, as a function of (Q, P, s).
template <class S>
S garnier_polynomial(const ParameterSet& ps, const PhasePoint<S>& QP, int i) {
  if (QP.L != 2) throw PreconditionError("the displayed Garnier form needs L = 2");
  const int N = QP.N;
  S one(1), half = from_rational<S>(Rational(1, 2));
  S e0 = from_rational<S>(ps.e[0]), k0 = from_rational<S>(ps.kappa[0]), k1 = from_rational<S>(ps.kappa[1]);
  S th0 = from_rational<S>(ps.theta[0]);
  // theta_{N+1} = d_{1,0}-d_{1,1}-1/2 and theta_{N+2} = d_{1,1}-d_{0,1}-1/2 in exponent form.
  S thN1 = k1 - k0 + e0 + e0 - half;
  S thN2 = -e0 - e0 - half;
  auto q = [&](int j) -> const S& { return QP.Q(j, 1); };
  auto p = [&](int j) -> const S& { return QP.P(j, 1); };
  auto s = [&](int j) -> const S& { return QP.s[j - 1]; };
  auto th = [&](int j) { return from_rational<S>(ps.theta[j]); };
  auto R = [&](int a, int b) { return s(a) * (s(b) - one) / (s(b) - s(a)); };
  auto Sij = [&](int a, int b) { return s(a) * (s(a) - one) / (s(a) - s(b)); };
  S sum(0);
  for (int j = 1; j <= N; ++j) sum += q(j) * p(j);
  S qpi = q(i) * p(i) + th(i);
  S h = q(i) * (k1 + sum) * (k1 - th0 + sum) + s(i) * p(i) * qpi;
  for (int j = 1; j <= N; ++j) {
    if (j == i) continue;
    S qpj = q(j) * p(j) + th(j);
    h -= R(j, i) * qpj * q(i) * p(j);
    h -= Sij(i, j) * qpi * q(j) * p(i);
    h -= R(i, j) * q(j) * p(j) * qpi;
    h -= R(i, j) * q(i) * p(i) * qpj;
  }
  h -= (s(i) + one) * qpi * q(i) * p(i);
  h -= (thN2 * s(i) + thN1 + one) * q(i) * p(i);
  return h;
}

// Partials in every Q_1^(j), P_1^(j) of s_i(s_i-1)(Htilde_i - displayed form),
// with (Q, P) symbolic and s fixed at the given rational values.
std::vector<LaurentPoly> garnier_residual_partials(const ParameterSet& ps, const std::vector<Rational>& s, int i);

}  // namespace ucred

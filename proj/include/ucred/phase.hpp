#pragma once

#include <string>
#include <vector>

#include "ucred/errors.hpp"
#include "ucred/params.hpp"
#include "ucred/scalar.hpp"

namespace ucred {

// Canonical coordinates q_n^{(i)}, p_n^{(i)} (i = 1..N, n = 1..L-1) and the
// times s_1..s_N, all in one numeric mode S.
template <class S>
struct PhasePoint {
  int L = 2, N = 1;
  std::vector<S> s;     // s[i-1] = s_i
  std::vector<S> q, p;  // row i-1, column n-1

  PhasePoint() = default;
  PhasePoint(int L_, int N_) : L(L_), N(N_), s(N_, S(0)), q(N_ * (L_ - 1), S(0)), p(N_ * (L_ - 1), S(0)) {}

  std::size_t idx(int i, int n) const { return static_cast<std::size_t>(i - 1) * (L - 1) + (n - 1); }
  S& Q(int i, int n) { return q[idx(i, n)]; }
  S& P(int i, int n) { return p[idx(i, n)]; }
  const S& Q(int i, int n) const { return q[idx(i, n)]; }
  const S& P(int i, int n) const { return p[idx(i, n)]; }
  int dim() const { return N * (L - 1); }
};

// Parameters converted to the numeric mode.
template <class S>
struct ScalarParams {
  std::vector<S> theta, e, kappa;
  explicit ScalarParams(const ParameterSet& ps) {
    for (const auto& x : ps.theta) theta.push_back(from_rational<S>(x));
    for (const auto& x : ps.e) e.push_back(from_rational<S>(x));
    for (const auto& x : ps.kappa) kappa.push_back(from_rational<S>(x));
  }
};

// Read access to q_n^{(i)}, p_n^{(i)} for all i in 0..N and all integers n,
// with the dependent slots i = 0 or n = 0 filled in from the constraints
// and q_{n+L} = s q_n, p_{n+L} = p_n / s.
template <class S>
class ExtendedPhaseView {
 public:
  ExtendedPhaseView(const ParameterSet& ps, const PhasePoint<S>& pt) : L_(pt.L), N_(pt.N), pt_(pt) {
    if (ps.L() != pt.L || ps.N() != pt.N) throw PreconditionError("parameter set and phase point disagree on (L, N)");
    ScalarParams<S> sp(ps);
    int L = L_, N = N_;
    qb_.assign((N + 1) * L, S(1));
    pb_.assign((N + 1) * L, S(0));
    for (int i = 1; i <= N; ++i)
      for (int n = 1; n < L; ++n) {
        qb_[i * L + n] = pt.Q(i, n);
        pb_[i * L + n] = pt.P(i, n);
      }
    for (int n = 1; n < L; ++n) {
      S v = sp.kappa[n];
      for (int i = 1; i <= N; ++i) v -= pt.Q(i, n) * pt.P(i, n);
      pb_[n] = v;
    }
    S sum_p0(0);
    for (int i = 1; i <= N; ++i) {
      S v = sp.theta[i];
      for (int n = 1; n < L; ++n) v -= pt.Q(i, n) * pt.P(i, n);
      pb_[i * L] = v;
      sum_p0 += v;
    }
    pb_[0] = sp.kappa[0] - sum_p0;
  }

  int L() const { return L_; }
  int N() const { return N_; }
  S s(int i) const { return i == 0 ? S(1) : pt_.s[i - 1]; }
  S q(int i, int n) const {
    int r = mod_floor(n, L_), k = div_floor(n, L_);
    return k == 0 ? qb_[i * L_ + r] : qb_[i * L_ + r] * ipow(s(i), k);
  }
  S p(int i, int n) const {
    int r = mod_floor(n, L_), k = div_floor(n, L_);
    return k == 0 ? pb_[i * L_ + r] : pb_[i * L_ + r] * ipow(s(i), -k);
  }

  static S ipow(const S& x, int k) {
    if (k < 0) return S(1) / ipow(x, -k);
    S r(1);
    for (int a = 0; a < k; ++a) r *= x;
    return r;
  }

 private:
  int L_, N_;
  const PhasePoint<S>& pt_;
  std::vector<S> qb_, pb_;
};

template <class S>
void check_singular_locus(const PhasePoint<S>& pt) {
  for (int i = 0; i < pt.N; ++i) {
    if (scalar_is_zero(pt.s[i]) || scalar_is_zero(pt.s[i] - S(1)))
      throw SingularityError("s_" + std::to_string(i + 1) + " lies on {0, 1}");
    for (int j = i + 1; j < pt.N; ++j)
      if (scalar_is_zero(pt.s[i] - pt.s[j]))
        throw SingularityError("s_" + std::to_string(i + 1) + " = s_" + std::to_string(j + 1));
  }
}

// Value of H_i and its partials with respect to the independent q, p.
template <class S>
struct HamiltonianJet {
  S value;
  std::vector<S> dq, dp;  // laid out like PhasePoint::q / p
};

// T_{ij} = sum_{m,n} q_m^{(i)} p_m^{(j)} q_n^{(j)} p_n^{(i)}.
template <class S>
S pair_trace(const ExtendedPhaseView<S>& x, int i, int j) {
  S a(0), b(0);
  for (int m = 0; m < x.L(); ++m) {
    a += x.q(i, m) * x.p(j, m);
    b += x.q(j, m) * x.p(i, m);
  }
  return a * b;
}

template <class S>
HamiltonianJet<S> hamiltonian_jet(const ParameterSet& ps, const PhasePoint<S>& pt, int i) {
  if (i < 1 || i > pt.N) throw PreconditionError("Hamiltonian index out of range");
  check_singular_locus(pt);
  ExtendedPhaseView<S> x(ps, pt);
  ScalarParams<S> sp(ps);
  const int L = pt.L, N = pt.N;
  // Gradient over all extended slots (k, n), k = 0..N, n = 0..L-1.
  std::vector<S> gQ((N + 1) * L, S(0)), gP((N + 1) * L, S(0));
  auto at = [L](int k, int n) { return static_cast<std::size_t>(k) * L + n; };
  S total(0);
  for (int n = 0; n < L; ++n) {
    total += sp.e[n] * x.q(i, n) * x.p(i, n);
    gQ[at(i, n)] += sp.e[n] * x.p(i, n);
    gP[at(i, n)] += sp.e[n] * x.q(i, n);
  }
  S si = x.s(i);
  for (int j = 0; j <= N; ++j) {
    std::vector<S> a(L), b(L);
    for (int m = 0; m < L; ++m) {
      a[m] = x.q(i, m) * x.p(j, m);
      b[m] = x.q(j, m) * x.p(i, m);
    }
    // sum_{m<n} a_m b_n
    std::vector<S> below(L, S(0)), above(L, S(0));
    for (int n = 1; n < L; ++n) below[n] = below[n - 1] + a[n - 1];
    for (int m = L - 2; m >= 0; --m) above[m] = above[m + 1] + b[m + 1];
    S chain(0);
    for (int n = 0; n < L; ++n) chain += below[n] * b[n];
    total += chain;
    for (int m = 0; m < L; ++m) {
      gQ[at(i, m)] += above[m] * x.p(j, m);
      gP[at(j, m)] += above[m] * x.q(i, m);
      gQ[at(j, m)] += below[m] * x.p(i, m);
      gP[at(i, m)] += below[m] * x.q(j, m);
    }
    if (j == i) continue;
    S w = x.s(j) / (si - x.s(j));
    S sa(0), sb(0);
    for (int m = 0; m < L; ++m) {
      sa += a[m];
      sb += b[m];
    }
    total += w * sa * sb;
    for (int m = 0; m < L; ++m) {
      gQ[at(i, m)] += w * sb * x.p(j, m);
      gP[at(j, m)] += w * sb * x.q(i, m);
      gQ[at(j, m)] += w * sa * x.p(i, m);
      gP[at(i, m)] += w * sa * x.q(j, m);
    }
  }
  HamiltonianJet<S> jet;
  S inv = S(1) / si;
  jet.value = total * inv;
  jet.dq.assign(pt.dim(), S(0));
  jet.dp.assign(pt.dim(), S(0));
  // Chain rule through p_n^{(0)}, p_0^{(k)} and p_0^{(0)}.
  for (int k = 1; k <= N; ++k)
    for (int n = 1; n < L; ++n) {
      S dep = gP[at(0, n)] + gP[at(k, 0)] - gP[at(0, 0)];
      jet.dq[pt.idx(k, n)] = (gQ[at(k, n)] - pt.P(k, n) * dep) * inv;
      jet.dp[pt.idx(k, n)] = (gP[at(k, n)] - pt.Q(k, n) * dep) * inv;
    }
  return jet;
}

template <class S>
S hamiltonian(const ParameterSet& ps, const PhasePoint<S>& pt, int i) {
  return hamiltonian_jet(ps, pt, i).value;
}

// Time derivatives (dq/ds_j, dp/ds_j) of the canonical equations.
template <class S>
struct FlowVector {
  std::vector<S> dq, dp;
};

template <class S>
FlowVector<S> vector_field(const ParameterSet& ps, const PhasePoint<S>& pt, int j) {
  HamiltonianJet<S> jet = hamiltonian_jet(ps, pt, j);
  FlowVector<S> out;
  out.dq = jet.dp;
  out.dp.resize(jet.dq.size());
  for (std::size_t k = 0; k < jet.dq.size(); ++k) out.dp[k] = -jet.dq[k];
  return out;
}

// Partial of H_i in s_j with q, p held fixed.
template <class S>
S explicit_s_partial(const ParameterSet& ps, const PhasePoint<S>& pt, int i, int j) {
  check_singular_locus(pt);
  ExtendedPhaseView<S> x(ps, pt);
  S si = x.s(i);
  if (j != i) {
    S d = si - x.s(j);
    return pair_trace(x, i, j) / (d * d);
  }
  S acc = -hamiltonian(ps, pt, i) / si;
  for (int k = 0; k <= pt.N; ++k) {
    if (k == i) continue;
    S d = si - x.s(k);
    acc -= x.s(k) * pair_trace(x, i, k) / (si * d * d);
  }
  return acc;
}

template <class S>
S poisson_bracket(const ParameterSet& ps, const PhasePoint<S>& pt, int i, int j) {
  auto a = hamiltonian_jet(ps, pt, i);
  auto b = hamiltonian_jet(ps, pt, j);
  S acc(0);
  for (std::size_t k = 0; k < a.dq.size(); ++k) acc += a.dq[k] * b.dp[k] - a.dp[k] * b.dq[k];
  return acc;
}

}  // namespace ucred

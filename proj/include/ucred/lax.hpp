#pragma once

#include <string>
#include <vector>

#include "ucred/character.hpp"
#include "ucred/eigen_support.hpp"
#include "ucred/errors.hpp"
#include "ucred/identities.hpp"
#include "ucred/params.hpp"
#include "ucred/phase.hpp"

namespace ucred {

enum class Gauge { v, qp };

std::string gauge_name(Gauge g);

// Residues A_0..A_{N+2} of dPhi/dz = sum_i A_i/(z-u_i) Phi, their rank-one
// factors A_i = b^(i) c^(i) (i <= N), and the regular part C_i of the
// deformation matrix B_i = C_i - A_i/(z-u_i) (v-gauge only).
template <class S>
struct LaxData {
  int L = 0, N = 0;
  Gauge gauge = Gauge::v;
  ParameterSet params;
  std::vector<Mat<S>> A;
  std::vector<std::vector<S>> b, c;
  std::vector<Mat<S>> C;
  std::vector<S> u;  // u_0..u_{N+1}; u_{N+1} = 0
};

// Exact v-gauge data built from f, g of the grid; entries are rational
// functions of t_0..t_N and u_i = t_i^{-L}.
LaxData<RationalFunction> build_lax_from_sigma(SigmaFamily& fam);

// Variable index used for the spectral parameter z in exact matrices.
inline int spectral_variable(int N) { return N + 1; }

// Deformation matrix B_i with z symbolic.
Mat<RationalFunction> deformation_matrix(const LaxData<RationalFunction>& lax, int i);
// dPhi/dz coefficient A(z) with z symbolic.
Mat<RationalFunction> spectral_matrix(const LaxData<RationalFunction>& lax);

// qp-gauge: c^(0) = 1, c^(i)_n = q_n^(i), b^(i)_n = -p_n^(i) with the
// extended slots; A_{N+1} is upper triangular with diagonal e_n and the
// upper part fixed by lower-triangularity of A_{N+2}.
template <class S>
LaxData<S> build_lax_from_point(const ParameterSet& ps, const PhasePoint<S>& pt) {
  ExtendedPhaseView<S> x(ps, pt);
  const int L = pt.L, N = pt.N;
  LaxData<S> lax;
  lax.L = L;
  lax.N = N;
  lax.gauge = Gauge::qp;
  lax.params = ps;
  Mat<S> upper_sum = zero_matrix<S>(L);
  Mat<S> total = zero_matrix<S>(L);
  for (int i = 0; i <= N; ++i) {
    std::vector<S> b(L), c(L);
    for (int n = 0; n < L; ++n) {
      c[n] = x.q(i, n);
      b[n] = -x.p(i, n);
    }
    Mat<S> Ai(L, L);
    for (int m = 0; m < L; ++m)
      for (int n = 0; n < L; ++n) Ai(m, n) = b[m] * c[n];
    for (int m = 0; m < L; ++m)
      for (int n = m + 1; n < L; ++n) upper_sum(m, n) += Ai(m, n);
    total += Ai;
    lax.A.push_back(Ai);
    lax.b.push_back(b);
    lax.c.push_back(c);
    lax.u.push_back(S(1) / x.s(i));
  }
  Mat<S> AN1 = zero_matrix<S>(L);
  for (int n = 0; n < L; ++n) AN1(n, n) = from_rational<S>(ps.e[n]);
  for (int m = 0; m < L; ++m)
    for (int n = m + 1; n < L; ++n) AN1(m, n) = -upper_sum(m, n);
  total += AN1;
  lax.A.push_back(AN1);
  lax.A.push_back(-total);
  lax.u.push_back(S(0));
  return lax;
}

// K_i = sum_{j != i} tr(A_i A_j)/(u_i - u_j) over j = 0..N+1, and H_i = -K_i u_i^2.
template <class S>
S trace_K(const LaxData<S>& lax, int i) {
  S acc(0);
  for (int j = 0; j <= lax.N + 1; ++j)
    if (j != i) acc += trace_of_product(lax.A[i], lax.A[j]) / (lax.u[i] - lax.u[j]);
  return acc;
}

template <class S>
S trace_hamiltonian(const LaxData<S>& lax, int i) {
  if (i < 1 || i > lax.N) throw PreconditionError("Hamiltonian index out of range");
  return -trace_K(lax, i) * lax.u[i] * lax.u[i];
}

// Difference of both trace formulas from their closed forms in (q, p).
template <class S>
std::vector<S> lemma_trace_residuals(const ParameterSet& ps, const PhasePoint<S>& pt) {
  auto lax = build_lax_from_point(ps, pt);
  ExtendedPhaseView<S> x(ps, pt);
  const int L = pt.L, N = pt.N;
  std::vector<S> out;
  for (int i = 0; i <= N; ++i) {
    for (int j = 0; j <= N; ++j) out.push_back(trace_of_product(lax.A[i], lax.A[j]) - pair_trace(x, i, j));
    S rhs(0);
    for (int n = 0; n < L; ++n) rhs -= from_rational<S>(ps.e[n]) * x.q(i, n) * x.p(i, n);
    for (int j = 0; j <= N; ++j)
      for (int m = 0; m < L; ++m)
        for (int n = m + 1; n < L; ++n) rhs -= x.q(i, m) * x.p(j, m) * x.q(j, n) * x.p(i, n);
    out.push_back(trace_of_product(lax.A[i], lax.A[N + 1]) - rhs);
  }
  return out;
}

// All 2x2 minors of A_i.
template <class S>
std::vector<S> rank_one_minors(const Mat<S>& a) {
  std::vector<S> out;
  const int n = static_cast<int>(a.rows());
  for (int r1 = 0; r1 < n; ++r1)
    for (int r2 = r1 + 1; r2 < n; ++r2)
      for (int c1 = 0; c1 < n; ++c1)
        for (int c2 = c1 + 1; c2 < n; ++c2) out.push_back(a(r1, c1) * a(r2, c2) - a(r1, c2) * a(r2, c1));
  return out;
}

// Coefficients of prod_k (lambda - roots[k]), lowest degree first.
std::vector<Rational> poly_from_roots(const std::vector<Rational>& roots);

struct SchemeRow {
  std::string singularity;
  std::vector<Rational> exponents;
  bool pass = false;
};

struct RiemannScheme {
  std::vector<SchemeRow> rows;
  bool relations = false;  // sum e = (L-1)/2, sum kappa = sum theta
  bool fuchs = false;      // sum of all exponents vanishes
  bool triangular = false; // A_{N+1} upper, A_{N+2} lower triangular
  bool pass() const;
};

// Compares the characteristic polynomial of every residue with the
// exponents (-theta_i, 0, ..., 0), (e_n), (kappa_n - e_n).
template <class S>
RiemannScheme riemann_scheme(const LaxData<S>& lax) {
  const auto& ps = lax.params;
  const int L = lax.L, N = lax.N;
  RiemannScheme rs;
  auto matches = [&](const Mat<S>& a, const std::vector<Rational>& ex) {
    auto cp = characteristic_polynomial(a);
    auto want = poly_from_roots(ex);
    for (int k = 0; k <= L; ++k)
      if (!scalar_is_zero(cp[k] - from_rational<S>(want[k]))) return false;
    return true;
  };
  for (int i = 0; i <= N; ++i) {
    std::vector<Rational> ex(L, Rational(0));
    ex[0] = -ps.theta[i];
    rs.rows.push_back({"u_" + std::to_string(i), ex, matches(lax.A[i], ex)});
  }
  rs.rows.push_back({"0", ps.e, matches(lax.A[N + 1], ps.e)});
  std::vector<Rational> inf;
  for (int n = 0; n < L; ++n) inf.push_back(ps.kappa[n] - ps.e[n]);
  rs.rows.push_back({"infinity", inf, matches(lax.A[N + 2], inf)});
  Rational se, sk, all;
  for (int n = 0; n < L; ++n) {
    se += ps.e[n];
    sk += ps.kappa[n];
  }
  rs.relations = se == Rational(L - 1, 2) && sk == ps.theta_sum();
  for (const auto& row : rs.rows)
    for (const auto& x : row.exponents) all += x;
  rs.fuchs = all.is_zero();
  rs.triangular = true;
  for (int m = 0; m < L; ++m)
    for (int n = 0; n < L; ++n) {
      if (m > n && !scalar_is_zero(lax.A[N + 1](m, n))) rs.triangular = false;
      if (m < n && !scalar_is_zero(lax.A[N + 2](m, n))) rs.triangular = false;
    }
  return rs;
}

// Spectral type (L-1,1)^{N+1}, (1^L), (1^L) and the accessory-parameter
// count (n_sing - 2) L^2 - sum mu^2 + 2.
std::vector<std::vector<int>> spectral_type(int L, int N);
int accessory_count(const std::vector<std::vector<int>>& type);

// Exact checks on v-gauge data; each report covers one matrix equation and
// carries the first nonvanishing entry as residual.
std::vector<IdentityReport> check_lax_structure(const LaxData<RationalFunction>& lax);
IdentityReport zero_curvature_residual(const LaxData<RationalFunction>& lax, int i);
// Rational z samples instead of a symbolic z.
IdentityReport zero_curvature_residual(const LaxData<RationalFunction>& lax, int i, const std::vector<Rational>& z);
// dA_j/du_i - [A_i, A_j]/(u_i - u_j) - [C_i, A_j] for j != i and
// dA_i/du_i + sum_k [A_i, A_k]/(u_i - u_k) - [C_i, A_i]; with plain = true
// the [C_i, .] terms are dropped.
std::vector<IdentityReport> schlesinger_residual(const LaxData<RationalFunction>& lax, bool plain = false);

// d/du_i of an exact function of t, via u_i = t_i^{-L}.
RationalFunction u_derivative(const RationalFunction& f, int i, int L);

}  // namespace ucred

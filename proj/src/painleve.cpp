#include "ucred/painleve.hpp"

#include "ucred/rational_function.hpp"

namespace ucred {

PviParams pvi_dictionary(const ParameterSet& ps, int n) {
  if (ps.N() != 1) throw PreconditionError("the P_VI dictionary requires N = 1");
  if (n < 1 || n >= ps.L()) throw PreconditionError("coupled block index out of range");
  const Rational& th = ps.theta[1];
  return {ps.e[0] - ps.e[n] + ps.kappa[n] + Rational(1), -ps.kappa[n] + th, -th, -ps.e[0] + ps.e[n] + ps.kappa[0],
          -ps.kappa[0] + th};
}

LaurentPoly pvi_symbolic_residual(const ParameterSet& ps) {
  const int L = ps.L();
  if (ps.N() != 1) throw PreconditionError("the P_VI form requires N = 1");
  if (2 * (L - 1) + 1 > kMaxVars) throw PreconditionError("too many symbolic variables");
  PhasePoint<RationalFunction> pt(L, 1);
  for (int n = 1; n < L; ++n) {
    pt.Q(1, n) = RationalFunction::var(n - 1);
    pt.P(1, n) = RationalFunction::var(L - 1 + n - 1);
  }
  pt.s[0] = RationalFunction::var(2 * (L - 1));
  return pvi_residual(ps, pt).numerator();
}

std::vector<LaurentPoly> garnier_residual_partials(const ParameterSet& ps, const std::vector<Rational>& s, int i) {
  const int N = ps.N();
  if (ps.L() != 2) throw PreconditionError("the displayed Garnier form needs L = 2");
  if (static_cast<int>(s.size()) != N) throw PreconditionError("one s value per flow expected");
  if (2 * N > kMaxVars) throw PreconditionError("too many symbolic variables");
  PhasePoint<RationalFunction> QP(2, N);
  for (int j = 1; j <= N; ++j) {
    QP.s[j - 1] = RationalFunction(s[j - 1]);
    QP.Q(j, 1) = RationalFunction::var(j - 1);
    QP.P(j, 1) = RationalFunction::var(N + j - 1);
  }
  PhasePoint<RationalFunction> pt = garnier_inverse(ps, QP);
  RationalFunction si = QP.s[i - 1];
  RationalFunction computed = hamiltonian(ps, pt, i);
  for (int n = 1; n < 2; ++n) computed -= pt.Q(i, n) * pt.P(i, n) / si;
  RationalFunction residual = si * (si - RationalFunction(1)) * computed - garnier_polynomial(ps, QP, i);
  std::vector<LaurentPoly> out;
  for (int v = 0; v < 2 * N; ++v) out.push_back(derivative(residual, v).numerator());
  return out;
}

}  // namespace ucred

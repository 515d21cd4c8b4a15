#include "ucred/canonical.hpp"

#include <chrono>
#include <string>

#include "ucred/errors.hpp"

namespace ucred {

namespace {

RationalFunction sigma_at(SigmaFamily& fam, int m, int n, int i, int di) {
  const LaurentPoly& raw = i < 0 ? fam(m, n) : fam.at(m, n, i, di);
  LaurentPoly s = raw.substitute(0, Rational(1));
  if (s.is_zero()) {
    std::string tag = "sigma_{" + std::to_string(m) + "," + std::to_string(n) + "}";
    if (i >= 0) tag += "(theta_" + std::to_string(i) + (di > 0 ? "+" : "") + std::to_string(di) + ")";
    throw DegenerateError(tag + " vanishes at t_0 = 1");
  }
  return RationalFunction::factor(s);
}

}  // namespace

CanonicalSolution canonical_from_sigma(SigmaFamily& fam) {
  const SigmaGrid& grid = fam.base();
  const int L = grid.L(), N = grid.N();
  const auto& theta = grid.context().theta;
  CanonicalSolution sol{derive_parameters(grid), PhasePoint<RationalFunction>(L, N)};
  auto& pt = sol.point;
  for (int i = 1; i <= N; ++i) pt.s[i - 1] = RationalFunction::var(i, L);
  RationalFunction base0 = sigma_at(fam, 0, 0, 0, 1);
  for (int i = 1; i <= N; ++i) {
    RationalFunction basei = sigma_at(fam, 0, 0, i, 1);
    for (int n = 1; n < L; ++n) {
      RationalFunction q = RationalFunction::var(i, n) * sigma_at(fam, n, -n, i, 1) * base0 /
                           (basei * sigma_at(fam, n, -n, 0, 1));
      RationalFunction qp = RationalFunction(theta[i] / Rational(L)) * sigma_at(fam, n - 1, -n - 1, i, -1) *
                            sigma_at(fam, n, -n, i, 1) / (sigma_at(fam, n, -n - 1, -1, 0) * sigma_at(fam, n - 1, -n, -1, 0));
      pt.Q(i, n) = q;
      pt.P(i, n) = qp / q;
    }
  }
  return sol;
}

RationalFunction s_derivative(const RationalFunction& f, int j, int L) {
  return RationalFunction(Rational(1, L)) * RationalFunction::var(j, 1 - L) * derivative(f, j);
}

std::vector<IdentityReport> canonical_flow_residual(const ParameterSet& params, const PhasePoint<RationalFunction>& pt) {
  const int N = pt.N;
  std::vector<FlowVector<RationalFunction>> fv;
  std::vector<double> ms(N + 1, 0.0);
  for (int j = 1; j <= N; ++j) {
    auto t0 = std::chrono::steady_clock::now();
    fv.push_back(vector_field(params, pt, j));
    ms[j] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  }
  // ds_j/dt_k, so that d/dt_k = sum_j (ds_j/dt_k) d/ds_j along the flows.
  std::vector<std::vector<RationalFunction>> ds(N + 1, std::vector<RationalFunction>(N + 1));
  for (int k = 1; k <= N; ++k)
    for (int j = 1; j <= N; ++j) ds[k][j] = derivative(pt.s[j - 1], k);
  std::vector<IdentityReport> out;
  for (int k = 1; k <= N; ++k)
    for (int i = 1; i <= N; ++i)
      for (int n = 1; n < pt.L; ++n) {
        std::size_t m = pt.idx(i, n);
        RationalFunction rq = derivative(pt.q[m], k), rp = derivative(pt.p[m], k);
        for (int j = 1; j <= N; ++j) {
          if (ds[k][j].is_zero()) continue;
          rq -= ds[k][j] * fv[j - 1].dq[m];
          rp -= ds[k][j] * fv[j - 1].dp[m];
        }
        out.push_back(make_report("flow-q", {{"t", k}, {"i", i}, {"n", n}}, rq.numerator(), ms[k]));
        out.push_back(make_report("flow-p", {{"t", k}, {"i", i}, {"n", n}}, rp.numerator(), ms[k]));
      }
  return out;
}

namespace {

template <class S>
PhasePoint<S> evaluate_point(const PhasePoint<RationalFunction>& pt, const std::vector<S>& t) {
  if (static_cast<int>(t.size()) != pt.N) throw PreconditionError("expected one t value per flow");
  std::vector<S> x(pt.N + 1, S(1));
  for (int i = 0; i < pt.N; ++i) x[i + 1] = t[i];
  PhasePoint<S> out(pt.L, pt.N);
  for (std::size_t k = 0; k < pt.s.size(); ++k) out.s[k] = pt.s[k].evaluate(std::span<const S>(x));
  for (std::size_t k = 0; k < pt.q.size(); ++k) {
    out.q[k] = pt.q[k].evaluate(std::span<const S>(x));
    out.p[k] = pt.p[k].evaluate(std::span<const S>(x));
  }
  return out;
}

}  // namespace

PhasePoint<double> evaluate_solution(const PhasePoint<RationalFunction>& pt, const std::vector<double>& t) {
  return evaluate_point(pt, t);
}

PhasePoint<Rational> evaluate_solution(const PhasePoint<RationalFunction>& pt, const std::vector<Rational>& t) {
  return evaluate_point(pt, t);
}

}  // namespace ucred

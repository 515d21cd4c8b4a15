#include "ucred/gsystem.hpp"

#include "ucred/errors.hpp"

namespace ucred {

namespace {

RationalFunction tv(int i) { return RationalFunction::var(i); }

std::vector<int> with_shift(std::vector<int> base, int N, int i, int d) {
  if (base.empty()) base.assign(N + 1, 0);
  base.at(i) += d;
  return base;
}

IdentityReport rf_report(std::string id, std::vector<std::pair<std::string, int>> idx, const RationalFunction& r) {
  return make_report(std::move(id), std::move(idx), r.numerator());
}

}  // namespace

RationalFunction sigma_rf(SigmaFamily& fam, int m, int n, const std::vector<int>& shift) {
  const LaurentPoly& s = shift.empty() ? fam(m, n) : fam.grid(shift).sigma(m, n);
  if (s.is_zero()) throw DegenerateError("sigma_{" + std::to_string(m) + "," + std::to_string(n) + "} vanishes");
  return RationalFunction::factor(s);
}

RationalFunction f_from_sigma(SigmaFamily& fam, int i, int m, int n, const std::vector<int>& shift) {
  int N = fam.base().N();
  auto up = with_shift(shift, N, i, 1);
  return sigma_rf(fam, m, n - 1, up) * sigma_rf(fam, m - 1, n - 1, shift) /
         (sigma_rf(fam, m - 1, n, up) * sigma_rf(fam, m, n - 2, shift));
}

RationalFunction g_from_sigma(SigmaFamily& fam, int i, int m, int n, const std::vector<int>& shift) {
  int N = fam.base().N();
  Rational th = fam.base().context().theta[i] + Rational(shift.empty() ? 0 : shift[i]);
  return RationalFunction(th) * sigma_rf(fam, m - 1, n - 1, with_shift(shift, N, i, -1)) *
         sigma_rf(fam, m, n, with_shift(shift, N, i, 1)) / (sigma_rf(fam, m, n - 1, shift) * sigma_rf(fam, m - 1, n, shift));
}

RationalFunction g_hirota_form(SigmaFamily& fam, int i, int m, int n) {
  const LaurentPoly& a = fam(m, n - 1);
  const LaurentPoly& b = fam(m - 1, n);
  RationalFunction num(LaurentPoly::var(i) * hirota(i, a, b));
  return num / (RationalFunction::factor(a) * RationalFunction::factor(b)) +
         RationalFunction(fam.base().context().theta[i]);
}

GVariables gvars_from_sigma(SigmaFamily& fam) {
  GVariables gv;
  gv.L = fam.base().L();
  gv.N = fam.base().N();
  std::size_t sz = static_cast<std::size_t>(gv.N + 1) * gv.L * gv.L;
  gv.f.resize(sz);
  gv.g.resize(sz);
  for (int i = 0; i <= gv.N; ++i)
    for (int m = 0; m < gv.L; ++m)
      for (int n = 0; n < gv.L; ++n) {
        gv.f[gv.idx(i, m, n)] = f_from_sigma(fam, i, m, n);
        gv.g[gv.idx(i, m, n)] = g_from_sigma(fam, i, m, n);
      }
  return gv;
}

UVArrays uv_from_fg(const GVariables& gv) {
  UVArrays uv;
  uv.L = gv.L;
  uv.N = gv.N;
  int L = gv.L;
  std::size_t sz = static_cast<std::size_t>(gv.N + 1) * (gv.N + 1) * L * L;
  uv.u.resize(sz);
  uv.v.resize(sz);
  for (int i = 0; i <= gv.N; ++i)
    for (int j = 0; j <= gv.N; ++j) {
      if (i == j) continue;
      RationalFunction ratio = tv(i) / tv(j);
      RationalFunction pre = RationalFunction(1) / (ratio.pow(L) - RationalFunction(1));
      auto step = [&](int a, int b) { return ratio * gv.F(i, a, b) / gv.F(j, a, b); };
      for (int m = 0; m < L; ++m)
        for (int n = 0; n < L; ++n) {
          RationalFunction su, sv;
          for (int b = 1; b <= L; ++b) {
            RationalFunction pu(1), pv(1);
            for (int a = 1; a <= b - 1; ++a) pu *= step(m - a + 1, n + a);
            for (int a = 0; a <= b - 1; ++a) pv *= step(m - a, n + a + 1);
            su += gv.G(i, m - b + 1, n + b - 1) * pu;
            sv += gv.G(i, m - b, n + b) * pv;
          }
          uv.u[uv.idx(i, j, m, n)] = pre * su;
          uv.v[uv.idx(i, j, m, n)] = pre * sv;
        }
    }
  return uv;
}

UVArrays uv_from_sigma(SigmaFamily& fam) {
  UVArrays uv;
  uv.L = fam.base().L();
  uv.N = fam.base().N();
  int L = uv.L, N = uv.N;
  std::size_t sz = static_cast<std::size_t>(N + 1) * (N + 1) * L * L;
  uv.u.resize(sz);
  uv.v.resize(sz);
  for (int i = 0; i <= N; ++i)
    for (int j = 0; j <= N; ++j) {
      if (i == j) continue;
      const Rational& th = fam.base().context().theta[i];
      std::vector<int> mix(N + 1, 0), up_i(N + 1, 0), up_j(N + 1, 0), none;
      mix[i] = -1;
      mix[j] = 1;
      up_i[i] = 1;
      up_j[j] = 1;
      RationalFunction cu = RationalFunction(th) * tv(j) / (tv(i) - tv(j));
      RationalFunction cv = RationalFunction(th) * tv(i) / (tv(i) - tv(j));
      for (int m = 0; m < L; ++m)
        for (int n = 0; n < L; ++n) {
          RationalFunction common = sigma_rf(fam, m, n, up_i) / sigma_rf(fam, m, n, up_j);
          uv.u[uv.idx(i, j, m, n)] = cu * sigma_rf(fam, m, n - 1, mix) / sigma_rf(fam, m, n - 1, none) * common;
          uv.v[uv.idx(i, j, m, n)] = cv * sigma_rf(fam, m - 1, n, mix) / sigma_rf(fam, m - 1, n, none) * common;
        }
    }
  return uv;
}

Rational kappa_mn(const SigmaGrid& grid, int m, int n) {
  Rational s(grid.degree(m, n - 1) - grid.degree(m - 1, n));
  for (const auto& t : grid.context().theta) s += t;
  return s;
}

std::vector<IdentityReport> check_gvars(SigmaFamily& fam, const GVariables& gv) {
  std::vector<IdentityReport> out;
  int L = gv.L, N = gv.N;
  for (int i = 0; i <= N; ++i)
    for (int m = 0; m < L; ++m)
      for (int n = 0; n < L; ++n) {
        out.push_back(rf_report("g-forms", {{"i", i}, {"m", m}, {"n", n}}, g_hirota_form(fam, i, m, n) - gv.G(i, m, n)));
        RationalFunction prod(1), sum;
        for (int j = 1; j <= L; ++j) {
          prod *= gv.F(i, m + j, n - j);
          sum += gv.G(i, m + j, n - j);
        }
        out.push_back(rf_report("conservation-f", {{"i", i}, {"m", m}, {"n", n}}, prod - RationalFunction(1)));
        out.push_back(rf_report("conservation-g", {{"i", i}, {"m", m}, {"n", n}},
                                sum - RationalFunction(Rational(L) * fam.base().context().theta[i])));
      }
  for (int m = 0; m < L; ++m)
    for (int n = 0; n < L; ++n) {
      RationalFunction s;
      for (int i = 0; i <= N; ++i) s += gv.G(i, m, n);
      out.push_back(rf_report("kappa", {{"m", m}, {"n", n}}, s - RationalFunction(kappa_mn(fam.base(), m, n))));
    }
  return out;
}

std::vector<IdentityReport> check_uv_relations(SigmaFamily& fam, const GVariables& gv, const UVArrays& uv) {
  std::vector<IdentityReport> out;
  int L = gv.L, N = gv.N;
  UVArrays direct = uv_from_sigma(fam);
  for (int i = 0; i <= N; ++i)
    for (int j = 0; j <= N; ++j) {
      if (i == j) continue;
      std::vector<int> up_j(N + 1, 0), down_i(N + 1, 0);
      up_j[j] = 1;
      down_i[i] = -1;
      for (int m = 0; m < L; ++m)
        for (int n = 0; n < L; ++n) {
          std::vector<std::pair<std::string, int>> idx{{"i", i}, {"j", j}, {"m", m}, {"n", n}};
          out.push_back(rf_report("uv-solved", idx, uv.U(i, j, m, n) - direct.U(i, j, m, n)));
          out.push_back(rf_report("uv-solved", idx, uv.V(i, j, m, n) - direct.V(i, j, m, n)));
          out.push_back(rf_report("uv-23", idx, uv.V(i, j, m, n) - uv.U(i, j, m, n) - gv.G(i, m, n)));
          out.push_back(rf_report("uv-24", idx,
                                  uv.U(i, j, m - 1, n) * tv(i) * gv.F(i, m, n) -
                                      uv.V(i, j, m, n - 1) * tv(j) * gv.F(j, m, n)));
          out.push_back(rf_report("uv-25", idx,
                                  uv.V(i, j, m, n - 1) - uv.U(i, j, m - 1, n) - g_from_sigma(fam, i, m, n, up_j)));
          out.push_back(rf_report("uv-26", idx,
                                  uv.U(i, j, m, n) * tv(i) * f_from_sigma(fam, i, m, n, down_i) -
                                      uv.V(i, j, m, n) * tv(j) * f_from_sigma(fam, j, m, n, down_i)));
        }
    }
  return out;
}

std::vector<IdentityReport> g_system_residual(const SigmaGrid& grid, const GVariables& gv, const UVArrays& uv) {
  std::vector<IdentityReport> out;
  int L = gv.L, N = gv.N;
  for (int m = 0; m < L; ++m)
    for (int n = 0; n < L; ++n) {
      RationalFunction kappa(kappa_mn(grid, m, n));
      for (int i = 0; i <= N; ++i) {
        const RationalFunction& f = gv.F(i, m, n);
        const RationalFunction& g = gv.G(i, m, n);
        RationalFunction coeff = kappa - gv.G(i, m, n - 1);
        RationalFunction dg;
        for (int j = 0; j <= N; ++j) {
          if (j == i) continue;
          coeff += uv.U(j, i, m - 1, n) - uv.V(j, i, m, n - 1);
          dg -= uv.U(i, j, m, n) * gv.G(j, m, n) + uv.V(j, i, m, n) * g;
        }
        out.push_back(rf_report("21a", {{"m", m}, {"n", n}, {"i", i}}, tv(i) * derivative(f, i) - coeff * f));
        out.push_back(rf_report("21c", {{"m", m}, {"n", n}, {"i", i}}, tv(i) * derivative(g, i) - dg));
        for (int j = 0; j <= N; ++j) {
          if (j == i) continue;
          // The logarithmic t_j-derivative of f^{(i)} produces g^{(j)}_{m,n-1};
          // with g^{(i)} here the equation already fails for sigma = 1.
          RationalFunction cb = -gv.G(j, m, n - 1) - uv.U(j, i, m - 1, n) + uv.V(j, i, m, n - 1);
          out.push_back(rf_report("21b", {{"m", m}, {"n", n}, {"i", i}, {"j", j}}, tv(j) * derivative(f, j) - cb * f));
          RationalFunction rd = uv.U(i, j, m, n) * gv.G(j, m, n) + uv.V(j, i, m, n) * g;
          out.push_back(rf_report("21d", {{"m", m}, {"n", n}, {"i", i}, {"j", j}}, tv(j) * derivative(g, j) - rd));
        }
      }
    }
  return out;
}

IdentityReport g_system_21b_as_printed(const GVariables& gv, const UVArrays& uv, int m, int n, int i, int j) {
  const RationalFunction& f = gv.F(i, m, n);
  RationalFunction cb = -gv.G(i, m, n - 1) - uv.U(j, i, m - 1, n) + uv.V(j, i, m, n - 1);
  return rf_report("21b-as-printed", {{"m", m}, {"n", n}, {"i", i}, {"j", j}}, tv(j) * derivative(f, j) - cb * f);
}

}  // namespace ucred

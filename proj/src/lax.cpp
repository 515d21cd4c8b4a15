#include "ucred/lax.hpp"

#include <chrono>

#include "ucred/gsystem.hpp"

namespace ucred {

std::string gauge_name(Gauge g) { return g == Gauge::v ? "v" : "qp"; }

bool RiemannScheme::pass() const {
  for (const auto& r : rows)
    if (!r.pass) return false;
  return relations && fuchs && triangular;
}

std::vector<Rational> poly_from_roots(const std::vector<Rational>& roots) {
  std::vector<Rational> c{Rational(1)};
  for (const auto& r : roots) {
    std::vector<Rational> next(c.size() + 1, Rational(0));
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k + 1] += c[k];
      next[k] -= r * c[k];
    }
    c = std::move(next);
  }
  return c;
}

std::vector<std::vector<int>> spectral_type(int L, int N) {
  std::vector<std::vector<int>> t(N + 1, std::vector<int>{L - 1, 1});
  t.push_back(std::vector<int>(L, 1));
  t.push_back(std::vector<int>(L, 1));
  return t;
}

int accessory_count(const std::vector<std::vector<int>>& type) {
  if (type.size() < 3) throw ConfigError("spectral type needs at least three singularities");
  int L = -1, sq = 0;
  for (const auto& mu : type) {
    int s = 0;
    for (int x : mu) {
      if (x <= 0) throw ConfigError("multiplicities must be positive");
      s += x;
      sq += x * x;
    }
    if (L < 0) L = s;
    if (s != L) throw ConfigError("every multiplicity list must sum to the same L");
  }
  return (static_cast<int>(type.size()) - 2) * L * L - sq + 2;
}

LaxData<RationalFunction> build_lax_from_sigma(SigmaFamily& fam) {
  const SigmaGrid& grid = fam.base();
  const int L = grid.L(), N = grid.N();
  GVariables gv = gvars_from_sigma(fam);
  LaxData<RationalFunction> lax;
  lax.L = L;
  lax.N = N;
  lax.gauge = Gauge::v;
  lax.params = derive_parameters(grid);
  using RF = RationalFunction;
  Mat<RF> w = zero_matrix<RF>(L), total = zero_matrix<RF>(L);
  for (int i = 0; i <= N; ++i) {
    RF ti = RF::var(i);
    RF ui = RF::var(i, -L);
    // v_{n, n+b} for b = 1..L; column index taken mod L.
    Mat<RF> v = zero_matrix<RF>(L);
    for (int n = 0; n < L; ++n) {
      RF acc = gv.G(i, n, -n) / RF(Rational(L));
      for (int b = 1; b <= L; ++b) {
        acc *= ti * gv.F(i, n + b, -n - b + 1);
        v(n, mod_floor(n + b, L)) = acc;
      }
    }
    Mat<RF> Ai = zero_matrix<RF>(L), Ci = zero_matrix<RF>(L);
    for (int m = 0; m < L; ++m)
      for (int n = 0; n < L; ++n) {
        if (m < n) {
          Ai(m, n) = -v(m, n);
          w(m, n) += v(m, n);
        } else {
          Ai(m, n) = -ui * v(m, n);
        }
        if (m > n) Ci(m, n) = v(m, n);
      }
    for (int n = 0; n < L; ++n) Ci(n, n) = RF(grid.context().theta[i] / Rational(L)) / ui;
    std::vector<RF> b(L), c(L);
    RF chain(1);
    for (int n = 0; n < L; ++n) {
      if (n > 0) chain *= ti * gv.F(i, n, -n + 1);
      c[n] = chain;
      b[n] = -gv.G(i, n, -n) / (RF(Rational(L)) * chain);
    }
    total += Ai;
    lax.A.push_back(Ai);
    lax.C.push_back(Ci);
    lax.b.push_back(b);
    lax.c.push_back(c);
    lax.u.push_back(ui);
  }
  Mat<RF> AN1 = zero_matrix<RF>(L);
  for (int m = 0; m < L; ++m) {
    AN1(m, m) = RF(lax.params.e[m]);
    for (int n = m + 1; n < L; ++n) AN1(m, n) = w(m, n);
  }
  total += AN1;
  lax.A.push_back(AN1);
  lax.A.push_back(-total);
  lax.u.push_back(RF(0));
  return lax;
}

Mat<RationalFunction> spectral_matrix(const LaxData<RationalFunction>& lax) {
  using RF = RationalFunction;
  RF z = RF::var(spectral_variable(lax.N));
  Mat<RF> A = zero_matrix<RF>(lax.L);
  for (int i = 0; i <= lax.N + 1; ++i) {
    RF inv = RF(1) / (z - lax.u[i]);
    for (int m = 0; m < lax.L; ++m)
      for (int n = 0; n < lax.L; ++n)
        if (!lax.A[i](m, n).is_zero()) A(m, n) += lax.A[i](m, n) * inv;
  }
  return A;
}

Mat<RationalFunction> deformation_matrix(const LaxData<RationalFunction>& lax, int i) {
  using RF = RationalFunction;
  if (lax.gauge != Gauge::v || i < 0 || i > lax.N) throw PreconditionError("deformation matrices exist for u_0..u_N in v-gauge");
  RF z = RF::var(spectral_variable(lax.N));
  RF inv = RF(1) / (z - lax.u[i]);
  Mat<RF> B = lax.C[i];
  for (int m = 0; m < lax.L; ++m)
    for (int n = 0; n < lax.L; ++n)
      if (!lax.A[i](m, n).is_zero()) B(m, n) -= lax.A[i](m, n) * inv;
  return B;
}

RationalFunction u_derivative(const RationalFunction& f, int i, int L) {
  return RationalFunction(Rational(-1, L)) * RationalFunction::var(i, L + 1) * derivative(f, i);
}

namespace {

using RF = RationalFunction;

Mat<RF> u_derivative(const Mat<RF>& a, int i, int L) {
  Mat<RF> out = a;
  for (Eigen::Index m = 0; m < a.rows(); ++m)
    for (Eigen::Index n = 0; n < a.cols(); ++n) out(m, n) = a(m, n).is_zero() ? RF(0) : u_derivative(a(m, n), i, L);
  return out;
}

IdentityReport matrix_report(std::string id, std::vector<std::pair<std::string, int>> idx, const Mat<RF>& r, double ms) {
  for (Eigen::Index m = 0; m < r.rows(); ++m)
    for (Eigen::Index n = 0; n < r.cols(); ++n) {
      LaurentPoly num = r(m, n).numerator();
      if (!num.is_zero()) {
        idx.emplace_back("row", static_cast<int>(m));
        idx.emplace_back("col", static_cast<int>(n));
        return make_report(std::move(id), std::move(idx), num, ms);
      }
    }
  return make_report(std::move(id), std::move(idx), LaurentPoly(), ms);
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

std::vector<IdentityReport> check_lax_structure(const LaxData<RationalFunction>& lax) {
  std::vector<IdentityReport> out;
  const int L = lax.L, N = lax.N;
  for (int i = 0; i <= N; ++i) {
    auto t0 = std::chrono::steady_clock::now();
    LaurentPoly bad;
    for (const auto& x : rank_one_minors(lax.A[i]))
      if (!x.is_zero()) {
        bad = x.numerator();
        break;
      }
    out.push_back(make_report("rank-1", {{"i", i}}, bad, elapsed_ms(t0)));
    t0 = std::chrono::steady_clock::now();
    Mat<RF> bc(L, L);
    for (int m = 0; m < L; ++m)
      for (int n = 0; n < L; ++n) bc(m, n) = lax.b[i][m] * lax.c[i][n] - lax.A[i](m, n);
    out.push_back(matrix_report("A=bc", {{"i", i}}, bc, elapsed_ms(t0)));
    t0 = std::chrono::steady_clock::now();
    RF cb(lax.params.theta[i]);
    for (int n = 0; n < L; ++n) cb += lax.c[i][n] * lax.b[i][n];
    out.push_back(make_report("c.b=-theta", {{"i", i}}, cb.numerator(), elapsed_ms(t0)));
    t0 = std::chrono::steady_clock::now();
    auto cp = characteristic_polynomial(lax.A[i]);
    LaurentPoly cres;
    for (int k = 0; k <= L; ++k) {
      RF want = k == L ? RF(1) : k == L - 1 ? RF(lax.params.theta[i]) : RF(0);
      RF d = cp[k] - want;
      if (!d.is_zero()) {
        cres = d.numerator();
        break;
      }
    }
    out.push_back(make_report("charpoly", {{"i", i}}, cres, elapsed_ms(t0)));
  }
  return out;
}

IdentityReport zero_curvature_residual(const LaxData<RationalFunction>& lax, int i) {
  auto t0 = std::chrono::steady_clock::now();
  const int L = lax.L;
  Mat<RF> A = spectral_matrix(lax);
  Mat<RF> B = deformation_matrix(lax, i);
  int zv = spectral_variable(lax.N);
  Mat<RF> R = u_derivative(A, i, L);
  Mat<RF> br = commutator(B, A);
  for (int m = 0; m < L; ++m)
    for (int n = 0; n < L; ++n) {
      if (!B(m, n).is_zero()) R(m, n) -= derivative(B(m, n), zv);
      R(m, n) -= br(m, n);
    }
  return matrix_report("zero-curvature", {{"i", i}}, R, elapsed_ms(t0));
}

IdentityReport zero_curvature_residual(const LaxData<RationalFunction>& lax, int i, const std::vector<Rational>& zs) {
  auto t0 = std::chrono::steady_clock::now();
  const int L = lax.L;
  int zv = spectral_variable(lax.N);
  Mat<RF> A = spectral_matrix(lax);
  Mat<RF> B = deformation_matrix(lax, i);
  Mat<RF> dA = u_derivative(A, i, L);
  Mat<RF> dB = B;
  for (int m = 0; m < L; ++m)
    for (int n = 0; n < L; ++n) dB(m, n) = derivative(B(m, n), zv);
  for (const auto& z : zs) {
    auto sub = [&](const Mat<RF>& x) {
      Mat<RF> y = x;
      for (int m = 0; m < L; ++m)
        for (int n = 0; n < L; ++n) y(m, n) = x(m, n).substitute(zv, z);
      return y;
    };
    Mat<RF> As = sub(A), Bs = sub(B), R = sub(dA);
    Mat<RF> dBs = sub(dB), br = commutator(Bs, As);
    for (int m = 0; m < L; ++m)
      for (int n = 0; n < L; ++n) R(m, n) -= dBs(m, n) + br(m, n);
    auto rep = matrix_report("zero-curvature", {{"i", i}}, R, 0.0);
    if (!rep.pass) {
      rep.timing_ms = elapsed_ms(t0);
      return rep;
    }
  }
  return make_report("zero-curvature", {{"i", i}}, LaurentPoly(), elapsed_ms(t0));
}

std::vector<IdentityReport> schlesinger_residual(const LaxData<RationalFunction>& lax, bool plain) {
  std::vector<IdentityReport> out;
  const int L = lax.L, N = lax.N;
  std::string id = plain ? "schlesinger-plain" : "schlesinger";
  for (int i = 0; i <= N; ++i)
    for (int j = 0; j <= N + 1; ++j) {
      auto t0 = std::chrono::steady_clock::now();
      Mat<RF> R = u_derivative(lax.A[j], i, L);
      if (j != i) {
        RF inv = RF(1) / (lax.u[i] - lax.u[j]);
        Mat<RF> cm = commutator(lax.A[i], lax.A[j]);
        for (int m = 0; m < L; ++m)
          for (int n = 0; n < L; ++n) R(m, n) -= cm(m, n) * inv;
      } else {
        for (int k = 0; k <= N + 1; ++k) {
          if (k == i) continue;
          RF inv = RF(1) / (lax.u[i] - lax.u[k]);
          Mat<RF> cm = commutator(lax.A[i], lax.A[k]);
          for (int m = 0; m < L; ++m)
            for (int n = 0; n < L; ++n) R(m, n) += cm(m, n) * inv;
        }
      }
      if (!plain) {
        Mat<RF> g = commutator(lax.C[i], lax.A[j]);
        for (int m = 0; m < L; ++m)
          for (int n = 0; n < L; ++n) R(m, n) -= g(m, n);
      }
      out.push_back(matrix_report(id, {{"i", i}, {"j", j}}, R, elapsed_ms(t0)));
    }
  return out;
}

}  // namespace ucred

#include "ucred/identities.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

#include "ucred/errors.hpp"
#include "ucred/rational_function.hpp"

namespace ucred {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

LaurentPoly t(int i) { return LaurentPoly::var(i); }

std::vector<int> shift_vec(int N, const std::vector<int>& set, int delta) {
  std::vector<int> d(N + 1, 0);
  for (int k : set) d.at(k) += delta;
  return d;
}

std::string set_str(const std::vector<int>& s) {
  std::ostringstream os;
  os << '{';
  for (std::size_t k = 0; k < s.size(); ++k) os << (k ? "," : "") << s[k];
  os << '}';
  return os.str();
}

}  // namespace

std::string IdentityReport::label() const {
  std::ostringstream os;
  os << id << '[';
  for (std::size_t k = 0; k < indices.size(); ++k) os << (k ? "," : "") << indices[k].first << '=' << indices[k].second;
  os << ']';
  return os.str();
}

IdentityReport make_report(std::string id, std::vector<std::pair<std::string, int>> indices, LaurentPoly residual,
                           double ms) {
  IdentityReport r;
  r.id = std::move(id);
  r.indices = std::move(indices);
  r.pass = residual.is_zero();
  r.residual = std::move(residual);
  r.timing_ms = ms;
  return r;
}

bool all_pass(const std::vector<IdentityReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const IdentityReport& r) { return r.pass; });
}

IdentityReport check_bilinear_a(SigmaFamily& fam, int m, int n, int i, int j) {
  auto t0 = Clock::now();
  LaurentPoly lhs = (t(i) - t(j)) * fam(m, n) * fam.at(m + 1, n + 1, i, 1, j, 1);
  LaurentPoly rhs = t(i) * fam.at(m + 1, n, i, 1) * fam.at(m, n + 1, j, 1) -
                    t(j) * fam.at(m + 1, n, j, 1) * fam.at(m, n + 1, i, 1);
  return make_report("16a", {{"m", m}, {"n", n}, {"i", i}, {"j", j}}, lhs - rhs, ms_since(t0));
}

IdentityReport check_bilinear_b(SigmaFamily& fam, int m, int n, int i) {
  auto t0 = Clock::now();
  const Rational& th = fam.base().context().theta[i];
  const LaurentPoly& f = fam(m + 1, n);
  const LaurentPoly& g = fam(m, n + 1);
  LaurentPoly lhs = t(i) * hirota(i, f, g) + th * (f * g);
  LaurentPoly rhs = th * (fam.at(m, n, i, -1) * fam.at(m + 1, n + 1, i, 1));
  return make_report("16b", {{"m", m}, {"n", n}, {"i", i}}, lhs - rhs, ms_since(t0));
}

IdentityReport check_bilinear_c(SigmaFamily& fam, int m, int n, int i, int j) {
  auto t0 = Clock::now();
  const Rational& th = fam.base().context().theta[i];
  const LaurentPoly& f = fam.at(m, n, j, -1);
  const LaurentPoly& g = fam(m + 1, n);
  LaurentPoly lhs = (t(j) - t(i)) * hirota(i, f, g) + th * (f * g);
  LaurentPoly rhs = th * (fam.at(m, n, i, -1) * fam.at(m + 1, n, i, 1, j, -1));
  return make_report("16c", {{"m", m}, {"n", n}, {"i", i}, {"j", j}}, lhs - rhs, ms_since(t0));
}

IdentityReport check_homogeneity(const SigmaGrid& grid, int m, int n) {
  auto t0 = Clock::now();
  const LaurentPoly& s = grid.sigma(m, n);
  LaurentPoly r = euler_apply(s, grid.N() + 1) - Rational(grid.degree(m, n)) * s;
  return make_report("16d", {{"m", m}, {"n", n}}, std::move(r), ms_since(t0));
}

std::vector<IdentityReport> check_bilinear(SigmaFamily& fam) {
  int L = fam.base().L(), N = fam.base().N();
  std::vector<IdentityReport> out;
  for (int m = 0; m < L; ++m)
    for (int n = 0; n < L; ++n) {
      for (int i = 0; i <= N; ++i)
        for (int j = 0; j <= N; ++j)
          if (i != j) out.push_back(check_bilinear_a(fam, m, n, i, j));
      for (int i = 0; i <= N; ++i) out.push_back(check_bilinear_b(fam, m, n, i));
      for (int i = 0; i <= N; ++i)
        for (int j = 0; j <= N; ++j)
          if (i != j) out.push_back(check_bilinear_c(fam, m, n, i, j));
      out.push_back(check_homogeneity(fam.base(), m, n));
    }
  return out;
}

std::vector<IdentityReport> check_bilinear(const SigmaGrid& grid) {
  SigmaFamily fam(grid);
  return check_bilinear(fam);
}

std::string DucInstance::label() const {
  return "duc" + std::to_string(family) + " I=" + set_str(I) + " J=" + set_str(J) + " m=" + std::to_string(m) +
         " n=" + std::to_string(n);
}

IdentityReport check_duc(SigmaFamily& fam, int family, const std::vector<int>& I, const std::vector<int>& J, int m,
                         int n, int base_m, int base_n) {
  return check_duc(fam, DucInstance{family, I, J, m, n}, base_m, base_n);
}

IdentityReport check_duc(SigmaFamily& fam, const DucInstance& inst, int base_m, int base_n) {
  auto t0 = Clock::now();
  int N = fam.base().N();
  const auto& I = inst.I;
  const auto& J = inst.J;
  for (int k : I)
    if (k < 0 || k > N) throw PreconditionError("index set entry out of range");
  for (int k : J)
    if (k < 0 || k > N || std::find(I.begin(), I.end(), k) != I.end())
      throw PreconditionError("index sets must be disjoint subsets of 0..N");
  int diff = static_cast<int>(I.size()) - static_cast<int>(J.size());
  int m = inst.m, n = inst.n;
  bool ok = (inst.family == 1 && m >= 0 && n >= 0 && diff == m + n + 2) ||
            (inst.family == 2 && n >= 0 && diff == n + 1) || (inst.family == 3 && m >= 0 && diff == m + 1);
  if (!ok) throw PreconditionError("cardinality constraint violated for " + inst.label());

  auto tau = [&](int a, int b, const std::vector<int>& shifted) -> RationalFunction {
    return RationalFunction(fam.grid(shift_vec(N, shifted, -1)).sigma(base_m + a, base_n + b));
  };
  auto without = [](std::vector<int> s, int k) {
    s.erase(std::find(s.begin(), s.end(), k));
    return s;
  };
  auto with = [](std::vector<int> s, int k) {
    s.push_back(k);
    return s;
  };
  RationalFunction ti, tj, total;
  for (int i : I) {
    RationalFunction coeff(1);
    ti = RationalFunction(t(i));
    for (int j : J) {
      tj = RationalFunction(t(j));
      if (inst.family == 1) coeff *= ti - tj;
      if (inst.family == 2) coeff *= RationalFunction(1) - tj / ti;
      if (inst.family == 3) coeff *= RationalFunction(1) - ti / tj;
    }
    for (int j : I) {
      if (j == i) continue;
      tj = RationalFunction(t(j));
      if (inst.family == 1) coeff /= ti - tj;
      if (inst.family == 2) coeff /= RationalFunction(1) - tj / ti;
      if (inst.family == 3) coeff /= RationalFunction(1) - ti / tj;
    }
    if (inst.family == 1) {
      coeff *= RationalFunction(LaurentPoly::var(i, n));
      total += coeff * tau(0, 0, without(I, i)) * tau(m, n, with(J, i));
    } else if (inst.family == 2) {
      total += coeff * tau(1, 0, without(I, i)) * tau(0, n, with(J, i));
    } else {
      total += coeff * tau(0, 1, without(I, i)) * tau(m, 0, with(J, i));
    }
  }
  if (inst.family == 2) total -= tau(0, 0, I) * tau(1, n, J);
  if (inst.family == 3) total -= tau(0, 0, I) * tau(m, 1, J);
  std::vector<std::pair<std::string, int>> idx{{"family", inst.family}, {"m", m}, {"n", n},
                                               {"base_m", base_m}, {"base_n", base_n}};
  for (int k : I) idx.emplace_back("I", k);
  for (int k : J) idx.emplace_back("J", k);
  return make_report("duc" + std::to_string(inst.family), std::move(idx), total.numerator(), ms_since(t0));
}

std::vector<DucInstance> enumerate_duc_instances(int N) {
  std::vector<DucInstance> out;
  int V = N + 1;
  int total = 1;
  for (int k = 0; k < V; ++k) total *= 3;
  for (int code = 0; code < total; ++code) {
    std::vector<int> I, J;
    int c = code;
    for (int k = 0; k < V; ++k, c /= 3) {
      if (c % 3 == 1) I.push_back(k);
      if (c % 3 == 2) J.push_back(k);
    }
    int diff = static_cast<int>(I.size()) - static_cast<int>(J.size());
    for (int m = 0; m + 2 <= diff; ++m) out.push_back(DucInstance{1, I, J, m, diff - 2 - m});
    if (diff >= 1) {
      out.push_back(DucInstance{2, I, J, 0, diff - 1});
      out.push_back(DucInstance{3, I, J, diff - 1, 0});
    }
  }
  return out;
}

std::vector<IdentityReport> check_all_duc(SigmaFamily& fam) {
  int L = fam.base().L();
  std::vector<IdentityReport> out;
  for (const auto& inst : enumerate_duc_instances(fam.base().N()))
    for (int a = 0; a < L; ++a)
      for (int b = 0; b < L; ++b) out.push_back(check_duc(fam, inst, a, b));
  return out;
}

IdentityReport check_toda(SigmaFamily& fam, int m, int n, int i, int j) {
  if (i == j) throw PreconditionError("Toda equation needs i != j");
  auto t0 = Clock::now();
  const auto& th = fam.base().context().theta;
  Rational tt = th[i] * th[j];
  const LaurentPoly& s = fam(m, n);
  LaurentPoly d = t(i) - t(j);
  LaurentPoly r = d * d * hirota2(i, j, s, s) + Rational(2) * tt * (s * s) -
                  Rational(2) * tt * (fam.at(m, n, i, 1, j, -1) * fam.at(m, n, i, -1, j, 1));
  return make_report("toda", {{"m", m}, {"n", n}, {"i", i}, {"j", j}}, std::move(r), ms_since(t0));
}

std::vector<IdentityReport> check_all_toda(SigmaFamily& fam) {
  int L = fam.base().L(), N = fam.base().N();
  std::vector<IdentityReport> out;
  for (int m = 0; m < L; ++m)
    for (int n = 0; n < L; ++n)
      for (int i = 0; i <= N; ++i)
        for (int j = i + 1; j <= N; ++j) out.push_back(check_toda(fam, m, n, i, j));
  return out;
}

}  // namespace ucred

#include "ucred/character.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <mutex>
#include <string>

#include "ucred/errors.hpp"

namespace ucred {

int mod_floor(int n, int L) {
  int r = n % L;
  return r < 0 ? r + L : r;
}

int div_floor(int n, int L) { return (n - mod_floor(n, L)) / L; }

Rational ParameterSet::e_ext(int n) const { return e[mod_floor(n, L())] + Rational(div_floor(n, L())); }
Rational ParameterSet::kappa_ext(int n) const { return kappa[mod_floor(n, L())]; }
Rational ParameterSet::a(int n) const { return e_ext(n + 1) - e_ext(n); }
Rational ParameterSet::b(int n) const {
  return e_ext(L() - n) - e_ext(L() - n - 1) - kappa_ext(L() - n) + kappa_ext(L() - n - 1);
}

std::vector<Rational> ParameterSet::a_all() const {
  std::vector<Rational> out;
  for (int n = 0; n < L(); ++n) out.push_back(a(n));
  return out;
}

std::vector<Rational> ParameterSet::b_all() const {
  std::vector<Rational> out;
  for (int n = 0; n < L(); ++n) out.push_back(b(n));
  return out;
}

Rational ParameterSet::theta_sum() const {
  Rational s(0);
  for (const auto& t : theta) s += t;
  return s;
}

void ParameterSet::check_invariants() const {
  Rational se(0), sk(0);
  for (const auto& x : e) se += x;
  for (const auto& x : kappa) sk += x;
  if (se != Rational(L() - 1, 2)) throw ConsistencyError("sum of e_n is " + se.str() + ", expected (L-1)/2");
  if (sk != theta_sum()) throw ConsistencyError("sum of kappa_n differs from sum of theta_i");
}

void SubstitutionContext::validate() const {
  if (L < 2) throw ConfigError("L must be at least 2");
  if (N < 1) throw ConfigError("N must be at least 1");
  if (N + 1 > kMaxVars - 2) throw ConfigError("N too large for the packed monomial layout");
  if (static_cast<int>(theta.size()) != N + 1) throw ConfigError("theta must have N+1 entries");
}

SubstitutionContext SubstitutionContext::shifted(int i, int delta) const {
  if (i < 0 || i > N) throw PreconditionError("theta index out of range");
  SubstitutionContext out = *this;
  out.theta[i] += Rational(delta);
  return out;
}

namespace {

std::string theta_key(const std::vector<Rational>& theta) {
  std::string k;
  for (const auto& t : theta) k += t.str() + ",";
  return k;
}

class HCache {
 public:
  LaurentPoly get(int n, const std::vector<Rational>& theta, bool inverse) {
    if (n < 0) return {};
    if (n == 0) return LaurentPoly(1);
    std::lock_guard lock(mu_);
    Series& s = series_[theta_key(theta) + (inverse ? "i" : "d")];
    int nv = static_cast<int>(theta.size());
    if (s.h.empty()) s.h.push_back(LaurentPoly(1));
    while (static_cast<int>(s.h.size()) <= n) {
      int k = static_cast<int>(s.p.size()) + 1;
      LaurentPoly pk;
      for (int i = 0; i < nv; ++i) pk += LaurentPoly(Monomial::var(i, inverse ? -k : k), theta[i]);
      s.p.push_back(std::move(pk));
      int m = static_cast<int>(s.h.size());
      LaurentPoly acc;
      for (int j = 1; j <= m; ++j) acc += s.p[j - 1] * s.h[m - j];
      acc *= Rational(1, m);
      s.h.push_back(std::move(acc));
    }
    return s.h[n];
  }

 private:
  struct Series {
    std::vector<LaurentPoly> p;  // p_1, p_2, ...
    std::vector<LaurentPoly> h;  // h_0, h_1, ...
  };
  std::mutex mu_;
  std::map<std::string, Series> series_;
};

HCache& hcache() {
  static HCache c;
  return c;
}

class UCCache {
 public:
  std::shared_ptr<const LaurentPoly> find(const std::string& k) {
    std::lock_guard lock(mu_);
    auto it = map_.find(k);
    return it == map_.end() ? nullptr : it->second;
  }
  void put(const std::string& k, std::shared_ptr<const LaurentPoly> v) {
    std::lock_guard lock(mu_);
    map_.emplace(k, std::move(v));
  }

 private:
  std::mutex mu_;
  std::map<std::string, std::shared_ptr<const LaurentPoly>> map_;
};

UCCache& uccache() {
  static UCCache c;
  return c;
}

// Row-by-row Laplace expansion with memoization on the set of used columns.
LaurentPoly subset_determinant(const std::vector<std::vector<LaurentPoly>>& a) {
  int M = static_cast<int>(a.size());
  if (M == 0) return LaurentPoly(1);
  std::vector<LaurentPoly> dp(std::size_t{1} << M), next(std::size_t{1} << M);
  std::vector<char> live(dp.size(), 0), next_live(dp.size(), 0);
  dp[0] = LaurentPoly(1);
  live[0] = 1;
  for (int r = 0; r < M; ++r) {
    std::fill(next_live.begin(), next_live.end(), 0);
    for (std::size_t mask = 0; mask < dp.size(); ++mask) {
      if (!live[mask] || dp[mask].is_zero()) continue;
      for (int c = 0; c < M; ++c) {
        if (mask & (std::size_t{1} << c) || a[r][c].is_zero()) continue;
        int above = std::popcount(mask >> (c + 1));
        LaurentPoly term = dp[mask] * a[r][c];
        if (above & 1) term = -term;
        std::size_t nm = mask | (std::size_t{1} << c);
        if (next_live[nm]) {
          next[nm] += term;
        } else {
          next[nm] = std::move(term);
          next_live[nm] = 1;
        }
      }
    }
    std::swap(dp, next);
    std::swap(live, next_live);
  }
  std::size_t full = (std::size_t{1} << M) - 1;
  return live[full] ? dp[full] : LaurentPoly();
}

LaurentPoly cofactor_determinant(std::vector<std::vector<LaurentPoly>> a) {
  int M = static_cast<int>(a.size());
  if (M == 0) return LaurentPoly(1);
  if (M == 1) return a[0][0];
  LaurentPoly det;
  for (int c = 0; c < M; ++c) {
    if (a[0][c].is_zero()) continue;
    std::vector<std::vector<LaurentPoly>> minor;
    for (int r = 1; r < M; ++r) {
      std::vector<LaurentPoly> row;
      for (int k = 0; k < M; ++k)
        if (k != c) row.push_back(a[r][k]);
      minor.push_back(std::move(row));
    }
    LaurentPoly t = a[0][c] * cofactor_determinant(std::move(minor));
    if (c % 2) det -= t;
    else det += t;
  }
  return det;
}

}  // namespace

LaurentPoly complete_homogeneous(int n, const SubstitutionContext& ctx, bool inverse) {
  return hcache().get(n, ctx.theta, inverse);
}

std::shared_ptr<const LaurentPoly> universal_character_ptr(const Partition& lambda, const Partition& mu,
                                                           const SubstitutionContext& ctx) {
  std::string key = lambda.str() + "|" + mu.str() + "|" + theta_key(ctx.theta);
  if (auto hit = uccache().find(key)) return hit;
  int l = lambda.length(), lp = mu.length(), M = l + lp;
  std::vector<std::vector<LaurentPoly>> a(M, std::vector<LaurentPoly>(M));
  for (int i = 1; i <= M; ++i)
    for (int j = 1; j <= M; ++j) {
      if (i <= lp) {
        a[i - 1][j - 1] = complete_homogeneous(mu(lp - i + 1) + i - j, ctx, true);
      } else {
        a[i - 1][j - 1] = complete_homogeneous(lambda(i - lp) - i + j, ctx, false);
      }
    }
  auto out = std::make_shared<const LaurentPoly>(subset_determinant(a));
  uccache().put(key, out);
  return out;
}

LaurentPoly universal_character(const Partition& lambda, const Partition& mu, const SubstitutionContext& ctx) {
  return *universal_character_ptr(lambda, mu, ctx);
}

LaurentPoly schur_jacobi_trudi(const Partition& lambda, const SubstitutionContext& ctx) {
  int l = lambda.length();
  std::vector<std::vector<LaurentPoly>> a(l, std::vector<LaurentPoly>(l));
  for (int i = 1; i <= l; ++i)
    for (int j = 1; j <= l; ++j) a[i - 1][j - 1] = complete_homogeneous(lambda(i) - i + j, ctx, false);
  return cofactor_determinant(std::move(a));
}

SigmaGrid::SigmaGrid(SubstitutionContext ctx, CoreIndex nu, CoreIndex nu_prime)
    : ctx_(std::move(ctx)), nu_(std::move(nu)), nu_prime_(std::move(nu_prime)) {
  ctx_.validate();
  if (static_cast<int>(nu_.size()) != ctx_.L || static_cast<int>(nu_prime_.size()) != ctx_.L)
    throw ConfigError("core index length must equal L");
  int L = ctx_.L;
  for (int m = 0; m < L; ++m) lam_.push_back(core_partition(nu_shift(nu_, m)));
  for (int n = 0; n < L; ++n) mu_.push_back(core_partition(nu_shift(nu_prime_, n)));
  for (int m = 0; m < L; ++m)
    for (int n = 0; n < L; ++n) {
      auto s = universal_character_ptr(lam_[m], mu_[n], ctx_);
      if (s->is_zero())
        throw DegenerateError("sigma_{" + std::to_string(m) + "," + std::to_string(n) + "} vanishes identically");
      cells_.push_back(std::move(s));
      degrees_.push_back(lam_[m].weight() - mu_[n].weight());
    }
}

void SigmaGrid::overwrite_cell(int m, int n, LaurentPoly p) {
  cells_[cell(m, n)] = std::make_shared<const LaurentPoly>(std::move(p));
}

SigmaGrid build_sigma_grid(const CoreIndex& nu, const CoreIndex& nu_prime, const SubstitutionContext& ctx) {
  return SigmaGrid(ctx, nu, nu_prime);
}

SigmaGrid shift_theta(const SigmaGrid& grid, int i, int delta) {
  return SigmaGrid(grid.context().shifted(i, delta), grid.nu(), grid.nu_prime());
}

SigmaGrid shift_theta(const SigmaGrid& grid, const std::vector<int>& delta) {
  SubstitutionContext ctx = grid.context();
  if (static_cast<int>(delta.size()) != ctx.N + 1) throw PreconditionError("shift vector must have N+1 entries");
  for (int k = 0; k <= ctx.N; ++k) ctx.theta[k] += Rational(delta[k]);
  return SigmaGrid(ctx, grid.nu(), grid.nu_prime());
}

namespace {

template <class Degree>
ParameterSet parameters_from_degrees(int L, std::vector<Rational> theta, Degree d) {
  ParameterSet ps;
  ps.theta = std::move(theta);
  Rational st = ps.theta_sum();
  for (int n = 0; n < L; ++n) {
    ps.e.push_back(Rational(d(n, -n - 1) - d(n - 1, -n - 1) + n, L));
    ps.kappa.push_back((Rational(d(n, -n - 1) - d(n - 1, -n)) + st) / Rational(L));
  }
  ps.check_invariants();
  return ps;
}

}  // namespace

ParameterSet derive_parameters(const SigmaGrid& grid) {
  return parameters_from_degrees(grid.L(), grid.context().theta, [&](int m, int n) { return grid.degree(m, n); });
}

ParameterSet derive_parameters(const std::vector<Rational>& theta, const CoreIndex& nu, const CoreIndex& nu_prime) {
  int L = static_cast<int>(nu.size());
  if (L < 2 || static_cast<int>(nu_prime.size()) != L) throw ConfigError("core index length must equal L");
  std::vector<int> wl, wm;
  for (int k = 0; k < L; ++k) {
    wl.push_back(core_partition(nu_shift(nu, k)).weight());
    wm.push_back(core_partition(nu_shift(nu_prime, k)).weight());
  }
  return parameters_from_degrees(L, theta, [&](int m, int n) { return wl[mod_floor(m, L)] - wm[mod_floor(n, L)]; });
}

SigmaFamily::SigmaFamily(SigmaGrid base) : base_(std::move(base)) {}

const SigmaGrid& SigmaFamily::grid(const std::vector<int>& delta) {
  if (std::all_of(delta.begin(), delta.end(), [](int d) { return d == 0; })) return base_;
  for (const auto& [k, g] : cache_)
    if (k == delta) return *g;
  cache_.emplace_back(delta, std::make_unique<SigmaGrid>(shift_theta(base_, delta)));
  return *cache_.back().second;
}

const LaurentPoly& SigmaFamily::at(int m, int n, int i, int di, int j, int dj) {
  std::vector<int> delta(base_.N() + 1, 0);
  if (i >= 0) delta.at(i) += di;
  if (j >= 0) delta.at(j) += dj;
  return grid(delta).sigma(m, n);
}

}  // namespace ucred

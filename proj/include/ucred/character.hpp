#pragma once

#include <memory>
#include <vector>

#include "ucred/laurent.hpp"
#include "ucred/params.hpp"
#include "ucred/partition.hpp"

namespace ucred {

// Power-sum substitution data: x_n = (1/n) sum theta_i t_i^n and
// y_n = (1/n) sum theta_i t_i^{-n}, with t_i the Laurent variable i.
struct SubstitutionContext {
  int L = 2;
  int N = 1;
  std::vector<Rational> theta;  // size N + 1

  void validate() const;
  SubstitutionContext shifted(int i, int delta) const;
  friend bool operator==(const SubstitutionContext&, const SubstitutionContext&) = default;
};

// Coefficient of z^n in prod_i (1 - t_i z)^{-theta_i} (or with t_i^{-1}).
LaurentPoly complete_homogeneous(int n, const SubstitutionContext& ctx, bool inverse);

// Twisted Jacobi-Trudi determinant S_[lambda, mu] in the substituted
// variables. Results are memoized per (lambda, mu, theta).
std::shared_ptr<const LaurentPoly> universal_character_ptr(const Partition& lambda, const Partition& mu,
                                                           const SubstitutionContext& ctx);
LaurentPoly universal_character(const Partition& lambda, const Partition& mu, const SubstitutionContext& ctx);

// Naive Jacobi-Trudi Schur determinant det(h_{lambda_i - i + j}) by
// cofactor expansion; used as an independent cross-check.
LaurentPoly schur_jacobi_trudi(const Partition& lambda, const SubstitutionContext& ctx);

// The (L, L)-periodic array sigma_{m,n} = S_[lambda(nu(m)), lambda(nu'(n))].
class SigmaGrid {
 public:
  SigmaGrid() = default;
  SigmaGrid(SubstitutionContext ctx, CoreIndex nu, CoreIndex nu_prime);

  int L() const { return ctx_.L; }
  int N() const { return ctx_.N; }
  const SubstitutionContext& context() const { return ctx_; }
  const CoreIndex& nu() const { return nu_; }
  const CoreIndex& nu_prime() const { return nu_prime_; }

  // Indices are taken mod L.
  const LaurentPoly& sigma(int m, int n) const { return *cells_[cell(m, n)]; }
  int degree(int m, int n) const { return degrees_[cell(m, n)]; }
  const Partition& lambda(int m) const { return lam_[mod_floor(m, L())]; }
  const Partition& mu(int n) const { return mu_[mod_floor(n, L())]; }

  // Replaces a cell; only for building negative-control fixtures.
  void overwrite_cell(int m, int n, LaurentPoly p);

 private:
  int cell(int m, int n) const { return mod_floor(m, L()) * L() + mod_floor(n, L()); }
  SubstitutionContext ctx_;
  CoreIndex nu_, nu_prime_;
  std::vector<Partition> lam_, mu_;
  std::vector<std::shared_ptr<const LaurentPoly>> cells_;
  std::vector<int> degrees_;
};

SigmaGrid build_sigma_grid(const CoreIndex& nu, const CoreIndex& nu_prime, const SubstitutionContext& ctx);
SigmaGrid shift_theta(const SigmaGrid& grid, int i, int delta);
// Shifts several theta's at once: delta[k] applies to theta_k.
SigmaGrid shift_theta(const SigmaGrid& grid, const std::vector<int>& delta);

ParameterSet derive_parameters(const SigmaGrid& grid);
// Same result from the core data alone, without building any sigma.
ParameterSet derive_parameters(const std::vector<Rational>& theta, const CoreIndex& nu, const CoreIndex& nu_prime);

// Access to sigma with theta shifts, caching each shifted grid.
class SigmaFamily {
 public:
  explicit SigmaFamily(SigmaGrid base);
  const SigmaGrid& base() const { return base_; }
  const SigmaGrid& grid(const std::vector<int>& delta);
  const LaurentPoly& operator()(int m, int n) const { return base_.sigma(m, n); }
  // sigma_{m,n}(theta_i + di, theta_j + dj); pass i or j < 0 to skip.
  const LaurentPoly& at(int m, int n, int i, int di, int j = -1, int dj = 0);

 private:
  SigmaGrid base_;
  std::vector<std::pair<std::vector<int>, std::unique_ptr<SigmaGrid>>> cache_;
};

}  // namespace ucred

#pragma once

#include <vector>

#include "ucred/character.hpp"
#include "ucred/identities.hpp"
#include "ucred/rational_function.hpp"

namespace ucred {

// f^{(i)}_{m,n}, g^{(i)}_{m,n} for i = 0..N and (m, n) mod L.
struct GVariables {
  int L = 0, N = 0;
  std::vector<RationalFunction> f, g;

  const RationalFunction& F(int i, int m, int n) const { return f[idx(i, m, n)]; }
  const RationalFunction& G(int i, int m, int n) const { return g[idx(i, m, n)]; }
  std::size_t idx(int i, int m, int n) const {
    return (static_cast<std::size_t>(i) * L + mod_floor(m, L)) * L + mod_floor(n, L);
  }
};

// U^{(i,j)}_{m,n}, V^{(i,j)}_{m,n} for i != j.
struct UVArrays {
  int L = 0, N = 0;
  std::vector<RationalFunction> u, v;

  const RationalFunction& U(int i, int j, int m, int n) const { return u[idx(i, j, m, n)]; }
  const RationalFunction& V(int i, int j, int m, int n) const { return v[idx(i, j, m, n)]; }
  std::size_t idx(int i, int j, int m, int n) const {
    return ((static_cast<std::size_t>(i) * (N + 1) + j) * L + mod_floor(m, L)) * L + mod_floor(n, L);
  }
};

// Sigma-level building blocks, with an optional theta shift vector applied
// to every sigma involved.
RationalFunction sigma_rf(SigmaFamily& fam, int m, int n, const std::vector<int>& shift);
RationalFunction f_from_sigma(SigmaFamily& fam, int i, int m, int n, const std::vector<int>& shift = {});
// Product form of g (shifted sigmas) and Hirota form (logarithmic derivative).
RationalFunction g_from_sigma(SigmaFamily& fam, int i, int m, int n, const std::vector<int>& shift = {});
RationalFunction g_hirota_form(SigmaFamily& fam, int i, int m, int n);

GVariables gvars_from_sigma(SigmaFamily& fam);
UVArrays uv_from_fg(const GVariables& gv);
UVArrays uv_from_sigma(SigmaFamily& fam);

// Both g expressions agree, conservation laws, and sum_i g^{(i)} = kappa_{m,n}.
std::vector<IdentityReport> check_gvars(SigmaFamily& fam, const GVariables& gv);
// V-U = g, the two ratio relations, V_{m,n-1}-U_{m-1,n} = g(theta_j+1) and
// agreement of the solved forms with the sigma definitions.
std::vector<IdentityReport> check_uv_relations(SigmaFamily& fam, const GVariables& gv, const UVArrays& uv);

Rational kappa_mn(const SigmaGrid& grid, int m, int n);
// The four evolution equations of f and g.
std::vector<IdentityReport> g_system_residual(const SigmaGrid& grid, const GVariables& gv, const UVArrays& uv);
// The t_j-equation for f^{(i)} with g^{(i)}_{m,n-1} in the coefficient, as
// typeset in the source; kept to document that it does not hold.
IdentityReport g_system_21b_as_printed(const GVariables& gv, const UVArrays& uv, int m, int n, int i, int j);

}  // namespace ucred

#pragma once

#include <vector>

#include "ucred/rational.hpp"

namespace ucred {

// Constant parameters of the reduced system: theta_0..theta_N, exponents
// e_0..e_{L-1} and kappa_0..kappa_{L-1}. Root variables are derived.
struct ParameterSet {
  std::vector<Rational> theta;
  std::vector<Rational> e;
  std::vector<Rational> kappa;

  int L() const { return static_cast<int>(e.size()); }
  int N() const { return static_cast<int>(theta.size()) - 1; }

  // Extended indexing: e_{n+L} = e_n + 1, kappa_{n+L} = kappa_n.
  Rational e_ext(int n) const;
  Rational kappa_ext(int n) const;
  // a_n = e_{n+1} - e_n; b_n = e_{L-n} - e_{L-n-1} - kappa_{L-n} + kappa_{L-n-1}.
  Rational a(int n) const;
  Rational b(int n) const;
  std::vector<Rational> a_all() const;
  std::vector<Rational> b_all() const;
  Rational theta_sum() const;

  // Throws ConsistencyError unless sum e = (L-1)/2 and sum kappa = sum theta.
  void check_invariants() const;

  friend bool operator==(const ParameterSet&, const ParameterSet&) = default;
};

int mod_floor(int n, int L);
int div_floor(int n, int L);

}  // namespace ucred

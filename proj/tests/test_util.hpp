#pragma once

#include <random>
#include <vector>

#include "ucred/laurent.hpp"
#include "ucred/rational.hpp"

namespace testutil {

inline ucred::Rational random_rational(std::mt19937_64& rng, int max_num = 9, int max_den = 7) {
  std::uniform_int_distribution<int> num(-max_num, max_num), den(1, max_den);
  return ucred::Rational(num(rng), den(rng));
}

inline ucred::Rational random_nonzero(std::mt19937_64& rng, int max_num = 9, int max_den = 7) {
  ucred::Rational q;
  do q = random_rational(rng, max_num, max_den);
  while (q.is_zero());
  return q;
}

// Generic theta values with pairwise distinct denominators.
inline std::vector<ucred::Rational> theta_pool(int count) {
  static const ucred::Rational pool[] = {{1, 2}, {1, 3}, {2, 5}, {3, 7}, {4, 11}, {5, 13}, {6, 17}};
  return std::vector<ucred::Rational>(pool, pool + count);
}

inline ucred::LaurentPoly random_poly(std::mt19937_64& rng, int nvars, int nterms, int max_exp = 2) {
  std::uniform_int_distribution<int> ex(-max_exp, max_exp);
  std::vector<ucred::Term> terms;
  for (int k = 0; k < nterms; ++k) {
    std::vector<int> e(nvars);
    for (auto& x : e) x = ex(rng);
    terms.push_back({ucred::Monomial::from_exponents(e), random_rational(rng)});
  }
  return ucred::LaurentPoly::from_terms(std::move(terms));
}

}  // namespace testutil

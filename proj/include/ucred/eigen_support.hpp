#pragma once

#include <vector>

#include <Eigen/Core>

#include "ucred/rational.hpp"
#include "ucred/rational_function.hpp"
#include "ucred/scalar.hpp"

// Exact scalars as Eigen coefficient types. Only ring operations are used on
// such matrices; nothing here relies on ordering or pivoting.
namespace Eigen {

template <>
struct NumTraits<ucred::Rational> : GenericNumTraits<ucred::Rational> {
  using Real = ucred::Rational;
  using NonInteger = ucred::Rational;
  using Literal = ucred::Rational;
  using Nested = ucred::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 16,
    MulCost = 32
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

template <>
struct NumTraits<ucred::RationalFunction> : GenericNumTraits<ucred::RationalFunction> {
  using Real = ucred::RationalFunction;
  using NonInteger = ucred::RationalFunction;
  using Literal = ucred::RationalFunction;
  using Nested = ucred::RationalFunction;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 16,
    AddCost = 256,
    MulCost = 256
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace ucred {

template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

template <class S>
Mat<S> zero_matrix(int n) {
  Mat<S> m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = S(0);
  return m;
}

// Plain loops; Eigen's product kernels assume cheap scalars.
template <class S>
Mat<S> matmul(const Mat<S>& a, const Mat<S>& b) {
  Mat<S> out(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
      S acc(0);
      for (Eigen::Index k = 0; k < a.cols(); ++k)
        if (!scalar_is_zero(a(i, k)) && !scalar_is_zero(b(k, j))) acc += a(i, k) * b(k, j);
      out(i, j) = acc;
    }
  return out;
}

template <class S>
Mat<S> commutator(const Mat<S>& a, const Mat<S>& b) {
  Mat<S> ab = matmul(a, b), ba = matmul(b, a);
  for (Eigen::Index i = 0; i < ab.rows(); ++i)
    for (Eigen::Index j = 0; j < ab.cols(); ++j) ab(i, j) -= ba(i, j);
  return ab;
}

template <class S>
S trace_of_product(const Mat<S>& a, const Mat<S>& b) {
  S acc(0);
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index k = 0; k < a.cols(); ++k)
      if (!scalar_is_zero(a(i, k)) && !scalar_is_zero(b(k, i))) acc += a(i, k) * b(k, i);
  return acc;
}

template <class S>
S matrix_trace(const Mat<S>& a) {
  S acc(0);
  for (Eigen::Index i = 0; i < a.rows(); ++i) acc += a(i, i);
  return acc;
}

// Coefficients c_0..c_n of det(lambda I - A) = sum c_k lambda^k
// (Faddeev-LeVerrier, exact over fields of characteristic zero).
template <class S>
std::vector<S> characteristic_polynomial(const Mat<S>& a) {
  const int n = static_cast<int>(a.rows());
  std::vector<S> c(n + 1, S(0));
  c[n] = S(1);
  Mat<S> M = zero_matrix<S>(n);
  for (int k = 1; k <= n; ++k) {
    for (int i = 0; i < n; ++i) M(i, i) += c[n - k + 1];
    M = matmul(a, M);
    c[n - k] = -matrix_trace(M) / S(k);
  }
  return c;
}

}  // namespace ucred

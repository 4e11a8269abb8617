#pragma once

#include <vector>

#include "regprod/core/bigrational.hpp"
#include "regprod/core/errors.hpp"

namespace regprod {

/// B_0..B_n from sum_{j=0}^{k} C(k+1, j) B_j = 0, with B_1 = -1/2.
inline std::vector<BigRational> bernoulli_numbers(int n) {
  if (n < 0) throw DomainError("bernoulli: negative index");
  std::vector<BigRational> b(static_cast<std::size_t>(n) + 1);
  b[0] = 1;
  for (int k = 1; k <= n; ++k) {
    if (k > 1 && k % 2 == 1) {
      b[static_cast<std::size_t>(k)] = 0;
      continue;
    }
    BigRational acc = 0;
    BigInt binom = 1;  // C(k+1, j)
    for (int j = 0; j < k; ++j) {
      acc += binom * b[static_cast<std::size_t>(j)];
      binom = binom * (k + 1 - j) / (j + 1);
    }
    b[static_cast<std::size_t>(k)] = -acc / (k + 1);
  }
  return b;
}

inline BigRational bernoulli(int k) { return bernoulli_numbers(k).back(); }

/// Coefficients of B_k(x) in increasing powers of x.
inline std::vector<BigRational> bernoulli_poly_coeffs(int k) {
  const auto b = bernoulli_numbers(k);
  std::vector<BigRational> c(static_cast<std::size_t>(k) + 1);
  BigInt binom = 1;  // C(k, j)
  for (int j = 0; j <= k; ++j) {
    c[static_cast<std::size_t>(k - j)] = binom * b[static_cast<std::size_t>(j)];
    binom = binom * (k - j) / (j + 1);
  }
  return c;
}

/// B_k(x) for any scalar type constructible from BigRational via `lift`.
template <class S, class Lift>
S bernoulli_poly(int k, const S& x, Lift lift) {
  const auto c = bernoulli_poly_coeffs(k);
  S acc = lift(c.back());
  for (int j = k - 1; j >= 0; --j) acc = acc * x + lift(c[static_cast<std::size_t>(j)]);
  return acc;
}

inline BigRational bernoulli_poly(int k, const BigRational& x) {
  return bernoulli_poly(k, x, [](const BigRational& r) { return r; });
}

template <class Real>
Real bernoulli_poly_real(int k, const Real& x) {
  return bernoulli_poly(k, x, [](const BigRational& r) { return to_real<Real>(r); });
}

}  // namespace regprod

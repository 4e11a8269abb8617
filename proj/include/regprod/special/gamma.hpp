#pragma once

#include <algorithm>
#include <cmath>

#include "regprod/core/errors.hpp"
#include "regprod/core/real.hpp"
#include "regprod/special/bernoulli.hpp"

namespace regprod {

/// log Gamma(x) for real x > 0: upward recursion to x >= x0, then Stirling with
/// Bernoulli corrections.
template <class Real>
Real log_gamma(const Real& x) {
  using std::log;
  using std::abs;
  if (!(x > 0)) throw DomainError("log_gamma: argument must be positive");
  const int bits = RealTraits<Real>::precision_bits();
  const double x0 = std::max(20.0, bits / 9.0 + 10.0);
  Real shift_log(0);
  Real y = x;
  Real prod(1);
  int pending = 0;
  while (y < x0) {
    prod *= y;
    y += 1;
    if (++pending == 8) {
      shift_log += log(prod);
      prod = 1;
      pending = 0;
    }
  }
  shift_log += log(prod);

  const Real half_log_2pi = log(2 * pi<Real>()) / 2;
  Real result = (y - Real(0.5)) * log(y) - y + half_log_2pi;
  const Real eps = RealTraits<Real>::epsilon();
  const int jmax = std::max(10, bits / 2);
  const auto b = bernoulli_numbers(2 * jmax);
  const Real inv_y2 = 1 / (y * y);
  Real ypow = 1 / y;
  for (int j = 1; j <= jmax; ++j) {
    Real term = to_real<Real>(b[static_cast<std::size_t>(2 * j)]) / Real(2 * j * (2 * j - 1)) * ypow;
    result += term;
    if (abs(term) < eps * abs(result)) break;
    ypow *= inv_y2;
  }
  return result - shift_log;
}

}  // namespace regprod

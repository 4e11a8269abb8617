#pragma once

#include <vector>

#include "regprod/core/errors.hpp"
#include "regprod/core/series.hpp"

namespace regprod {

/// Expansion of s^l e^{x s} / prod_{j=1}^{l} (alpha_j e^{a_j s} - 1) through s^K,
/// l = alphas.size(). Where the result is a power series, k! times the
/// coefficient of s^k is the generalized Bernoulli polynomial B_k^{[l]}(x; alpha; a).
template <class S>
TruncatedSeries<S> generalized_bernoulli_series(const S& x, const std::vector<S>& alphas,
                                                const std::vector<S>& a_values, int K) {
  using T = ScalarTraits<S>;
  if (alphas.size() != a_values.size()) throw DomainError("generalized_bernoulli_series: size mismatch");
  if (K < 0) throw DomainError("generalized_bernoulli_series: negative order");
  const int ell = static_cast<int>(alphas.size());
  const int M = K + 2 * ell + 1;

  auto result = exp_linear(x, M).shift(ell);
  for (int j = 0; j < ell; ++j) {
    const S& alpha = alphas[static_cast<std::size_t>(j)];
    const S& a = a_values[static_cast<std::size_t>(j)];
    if (T::is_one(alpha) && T::is_zero(a)) {
      throw DomainError("generalized_bernoulli_series: factor alpha e^{a s} - 1 vanishes identically");
    }
    auto factor = alpha * exp_linear(a, M) - TruncatedSeries<S>::constant(T::from_int(1), M);
    if (T::is_one(alpha)) factor = factor.drop_leading(1).first;  // exact zero constant term
    result = result * inverse(factor);
  }
  return result.truncate(K);
}

}  // namespace regprod

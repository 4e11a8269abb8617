#pragma once

#include <span>
#include <vector>

#include "regprod/core/series.hpp"

namespace regprod {

/// Complete Bell polynomial B_r(x_1, ..., x_r), r = x.size():
/// exp(sum_j x_j t^j / j!) = sum_k B_k t^k / k!.
template <class S>
S complete_bell(std::span<const S> x) {
  const std::size_t r = x.size();
  using T = ScalarTraits<S>;
  std::vector<S> b(r + 1, T::from_int(0));
  b[0] = T::from_int(1);
  for (std::size_t n = 0; n < r; ++n) {
    // B_{n+1} = sum_{i=0}^{n} C(n, i) B_{n-i} x_{i+1}
    S acc = T::from_int(0);
    long long binom = 1;
    for (std::size_t i = 0; i <= n; ++i) {
      acc = acc + T::from_int(binom) * b[n - i] * x[i];
      binom = binom * static_cast<long long>(n - i) / static_cast<long long>(i + 1);
    }
    b[n + 1] = acc;
  }
  return b[r];
}

template <class S>
S complete_bell(const std::vector<S>& x) {
  return complete_bell(std::span<const S>(x));
}

}  // namespace regprod

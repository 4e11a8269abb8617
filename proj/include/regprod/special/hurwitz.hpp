#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "regprod/core/complex.hpp"
#include "regprod/core/errors.hpp"
#include "regprod/core/real.hpp"
#include "regprod/special/bernoulli.hpp"

namespace regprod {

template <class Real>
struct HurwitzTaylor {
  /// Taylor coefficients c_0..c_K at s = 0.
  std::vector<Complex<Real>> coeffs;
  /// max_k |c_k(nodes) - c_k(nodes/2)|.
  Real error_estimate{0};
};

/// Hurwitz zeta by Euler-Maclaurin summation, with Taylor data at s = 0
/// extracted by the trapezoidal rule on the circle |s| = radius.
template <class Real>
class HurwitzEvaluator {
 public:
  static constexpr int kMaxTaylorOrder = 6;

  /// Summed terms N.
  int cutoff = 30;
  /// Highest Bernoulli index in the tail (even).
  int tail_order = 20;
  Real radius = Real(1) / 4;
  /// Node count of the coarse rule; the reported values use twice as many.
  int nodes = 64;

  HurwitzEvaluator() : bernoulli_(bernoulli_numbers(tail_order)) {}

  HurwitzEvaluator(int cutoff_terms, int tail, Real r, int node_count)
      : cutoff(cutoff_terms), tail_order(tail), radius(r), nodes(node_count) {
    validate();
    bernoulli_ = bernoulli_numbers(tail_order);
  }

  /// Defaults widened so the Euler-Maclaurin remainder stays below 2^-bits.
  static HurwitzEvaluator for_precision(int bits) {
    if (bits <= 96) return HurwitzEvaluator(30, 20, Real(1) / 4, 64);
    const int m = 2 * ((bits + 15) / 16);
    return HurwitzEvaluator(bits / 2, m, Real(1) / 4, std::max(64, bits / 2));
  }

  void validate() const {
    if (cutoff < 10) throw DomainError("HurwitzEvaluator: cutoff N must be >= 10");
    if (tail_order < 2 || tail_order % 2 != 0) throw DomainError("HurwitzEvaluator: tail order M must be even and >= 2");
    if (!(radius > 0) || !(radius < Real(1) / 2)) throw DomainError("HurwitzEvaluator: radius must lie in (0, 1/2)");
    if (nodes < 8) throw DomainError("HurwitzEvaluator: need at least 8 nodes");
  }

  /// zeta_H(s, x) for s != 1, x > 0.
  Complex<Real> zeta(const Complex<Real>& s, const Real& x) const {
    using std::log;
    if (!(x > 0)) throw DomainError("hurwitz_zeta: x must be positive");
    if (s.re == 1 && s.im == 0) throw DomainError("hurwitz_zeta: pole at s = 1");
    // Far left of the strip the summed terms grow like N^{-Re s} and cancel;
    // a short head keeps the cancellation within working precision.
    const int n_head = s.re < -1 ? std::min(cutoff, 10) : cutoff;
    Complex<Real> sum;
    for (int k = 0; k < n_head; ++k) sum += exp(-s * Complex<Real>(Real(log(x + k))));
    const Real w = x + n_head;
    const Complex<Real> w_pow = exp(-s * Complex<Real>(Real(log(w))));  // w^{-s}
    sum += w_pow * Complex<Real>(w) / (s - Complex<Real>(Real(1)));
    sum += w_pow * Complex<Real>(Real(1) / 2);
    Complex<Real> poch = s;
    Real w_neg = 1 / w;  // w^{1-2j}
    const Real w_inv2 = 1 / (w * w);
    Real fact(2);  // (2j)!
    for (int j = 1; 2 * j <= tail_order; ++j) {
      const Real coef = to_real<Real>(bernoulli_[static_cast<std::size_t>(2 * j)]) / fact;
      sum += poch * w_pow * Complex<Real>(coef * w_neg);
      poch = poch * (s + Complex<Real>(Real(2 * j - 1))) * (s + Complex<Real>(Real(2 * j)));
      w_neg *= w_inv2;
      fact *= Real((2 * j + 1) * (2 * j + 2));
    }
    return sum;
  }

  /// Taylor coefficients c_0..c_K of zeta_H(s, x) at s = 0, K <= 6.
  HurwitzTaylor<Real> taylor_at_zero(const Real& x, int K) const {
    if (K < 0 || K > kMaxTaylorOrder)
      throw DomainError("hurwitz_taylor_at_zero: order must be in [0, 6]");
    return taylor_at(Complex<Real>(), x, K);
  }

  /// Taylor coefficients at an arbitrary anchor s0 (|s0 - 1| > radius).
  HurwitzTaylor<Real> taylor_at(const Complex<Real>& s0, const Real& x, int K) const {
    using std::abs;
    const int n2 = 2 * nodes;
    std::vector<Complex<Real>> values(static_cast<std::size_t>(n2));
    std::vector<Complex<Real>> roots;
    for (int j = 0; j < n2; ++j) roots.push_back(root_of_unity<Real>(j, n2));
    const bool real_axis = s0.im == 0;
    for (int j = 0; j < n2; ++j) {
      if (real_axis && j > nodes) {
        values[static_cast<std::size_t>(j)] = conj(values[static_cast<std::size_t>(n2 - j)]);
        continue;
      }
      const auto node = s0 + roots[static_cast<std::size_t>(j)] * Complex<Real>(radius);
      values[static_cast<std::size_t>(j)] = zeta(node, x);
    }
    auto extract = [&](int stride) {
      const int n = n2 / stride;
      std::vector<Complex<Real>> c;
      Real rpow(1);
      for (int k = 0; k <= K; ++k) {
        Complex<Real> acc;
        for (int j = 0; j < n; ++j) {
          const int idx = (n2 - (j * stride * k) % n2) % n2;
          acc += values[static_cast<std::size_t>(j * stride)] * roots[static_cast<std::size_t>(idx)];
        }
        c.push_back(acc * Complex<Real>(1 / (Real(n) * rpow)));
        rpow *= radius;
      }
      return c;
    };
    HurwitzTaylor<Real> out;
    out.coeffs = extract(1);
    const auto coarse = extract(2);
    for (int k = 0; k <= K; ++k)
      out.error_estimate = std::max(out.error_estimate, abs(out.coeffs[static_cast<std::size_t>(k)] -
                                                            coarse[static_cast<std::size_t>(k)]));
    return out;
  }

 private:
  std::vector<BigRational> bernoulli_;
};

template <class Real>
Complex<Real> hurwitz_zeta(const Complex<Real>& s, const Real& x) {
  return HurwitzEvaluator<Real>::for_precision(RealTraits<Real>::precision_bits()).zeta(s, x);
}

template <class Real>
HurwitzTaylor<Real> hurwitz_taylor_at_zero(const Real& x, int K) {
  return HurwitzEvaluator<Real>::for_precision(RealTraits<Real>::precision_bits()).taylor_at_zero(x, K);
}

/// Taylor coefficients of the Riemann zeta function at s = 0 (zeta_H(s, 1)).
template <class Real>
HurwitzTaylor<Real> riemann_taylor_at_zero(int K) {
  return hurwitz_taylor_at_zero(Real(1), K);
}

}  // namespace regprod

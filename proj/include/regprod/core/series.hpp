#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "regprod/core/bigrational.hpp"
#include "regprod/core/complex.hpp"
#include "regprod/core/errors.hpp"

namespace regprod {

/// Per-scalar hooks used by the series algebra. Exact scalars never round and
/// refuse transcendental operations (exp/log of a nonzero constant term).
template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<BigRational> {
  static constexpr bool exact = true;
  static BigRational from_int(long long n) { return BigRational(n); }
  static bool is_zero(const BigRational& x) { return x == 0; }
  static bool is_one(const BigRational& x) { return x == 1; }
  static BigRational exp_const(const BigRational&) {
    throw DomainError("exact series: exp needs a zero constant term");
  }
  static BigRational log_const(const BigRational&) {
    throw DomainError("exact series: log needs constant term 1");
  }
};

template <class Real>
struct ScalarTraits<Complex<Real>> {
  static constexpr bool exact = false;
  static Complex<Real> from_int(long long n) { return Complex<Real>(Real(n)); }
  static bool is_zero(const Complex<Real>& x) { return x.re == 0 && x.im == 0; }
  static bool is_one(const Complex<Real>& x) { return x.re == 1 && x.im == 0; }
  static Complex<Real> exp_const(const Complex<Real>& c) { return exp(c); }
  static Complex<Real> log_const(const Complex<Real>& c) { return log(c); }
};

template <class Real>
  requires std::is_floating_point_v<Real> || std::is_same_v<Real, MpfrReal>
struct ScalarTraits<Real> {
  static constexpr bool exact = false;
  static Real from_int(long long n) { return Real(n); }
  static bool is_zero(const Real& x) { return x == 0; }
  static bool is_one(const Real& x) { return x == 1; }
  static Real exp_const(const Real& c) {
    using std::exp;
    return exp(c);
  }
  static Real log_const(const Real& c) {
    using std::log;
    if (c <= 0) throw DomainError("real series: log of non-positive constant term");
    return log(c);
  }
};

/// Laurent series sum_{e=low}^{order} c_e t^e + O(t^{order+1}).
///
/// Coefficients below `low` are exactly zero; coefficients above `order` are
/// unknown and never reported. `order` may be below `low` (no information
/// beyond "starts at low").
template <class S>
class TruncatedSeries {
 public:
  using Traits = ScalarTraits<S>;

  TruncatedSeries() = default;

  TruncatedSeries(int low, std::vector<S> coeffs, int order) : low_(low), order_(order) {
    const int n = std::max(0, order - low + 1);
    coeffs.resize(static_cast<std::size_t>(n), Traits::from_int(0));
    coeffs_ = std::move(coeffs);
  }

  /// Power series c_0 + c_1 t + ... known through t^order.
  static TruncatedSeries power(std::vector<S> coeffs, int order) {
    return TruncatedSeries(0, std::move(coeffs), order);
  }

  static TruncatedSeries constant(const S& c, int order) { return power({c}, order); }

  static TruncatedSeries monomial(const S& c, int exponent, int order) {
    return TruncatedSeries(exponent, {c}, order);
  }

  int low() const { return low_; }
  int order() const { return order_; }

  /// Coefficient at exponent e; zero below low, an error above order.
  S operator[](int e) const {
    if (e > order_) throw PrecisionError("series coefficient t^" + std::to_string(e) +
                                         " requested beyond truncation order " +
                                         std::to_string(order_));
    if (e < low_) return Traits::from_int(0);
    return coeffs_[static_cast<std::size_t>(e - low_)];
  }

  const std::vector<S>& coefficients() const { return coeffs_; }

  /// Lowest exponent with a nonzero stored coefficient; order+1 if none.
  int valuation() const {
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      if (!Traits::is_zero(coeffs_[i])) return low_ + static_cast<int>(i);
    return order_ + 1;
  }

  TruncatedSeries truncate(int order) const {
    return TruncatedSeries(low_, coeffs_, std::min(order, order_));
  }

  /// Discards k leading coefficients the caller knows to vanish; returns the
  /// dropped values so callers can report their size.
  std::pair<TruncatedSeries, std::vector<S>> drop_leading(int k) const {
    std::vector<S> dropped;
    std::vector<S> rest;
    for (int i = 0; i < static_cast<int>(coeffs_.size()); ++i) {
      if (i < k) dropped.push_back(coeffs_[static_cast<std::size_t>(i)]);
      else rest.push_back(coeffs_[static_cast<std::size_t>(i)]);
    }
    return {TruncatedSeries(low_ + k, std::move(rest), order_), std::move(dropped)};
  }

  /// t^k * this.
  TruncatedSeries shift(int k) const { return TruncatedSeries(low_ + k, coeffs_, order_ + k); }

  TruncatedSeries& operator*=(const S& c) {
    for (auto& x : coeffs_) x = x * c;
    return *this;
  }

  friend TruncatedSeries operator*(TruncatedSeries a, const S& c) { return a *= c; }
  friend TruncatedSeries operator*(const S& c, TruncatedSeries a) { return a *= c; }

  friend TruncatedSeries operator-(const TruncatedSeries& a) { return a * Traits::from_int(-1); }

  friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
    const int low = std::min(a.low_, b.low_);
    const int order = std::min(a.order_, b.order_);
    std::vector<S> c;
    for (int e = low; e <= order; ++e) c.push_back(a.at_or_zero(e) + b.at_or_zero(e));
    return TruncatedSeries(low, std::move(c), order);
  }

  friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) { return a + (-b); }

  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    const int low = a.low_ + b.low_;
    const int order = std::min(a.order_ + b.low_, b.order_ + a.low_);
    std::vector<S> c(static_cast<std::size_t>(std::max(0, order - low + 1)), Traits::from_int(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      for (std::size_t j = 0; j < b.coeffs_.size() && i + j < c.size(); ++j) {
        c[i + j] = c[i + j] + a.coeffs_[i] * b.coeffs_[j];
      }
    }
    return TruncatedSeries(low, std::move(c), order);
  }

  friend TruncatedSeries operator/(const TruncatedSeries& a, const TruncatedSeries& b) { return a * inverse(b); }

 private:
  S at_or_zero(int e) const {
    if (e < low_ || e > order_) return Traits::from_int(0);
    return coeffs_[static_cast<std::size_t>(e - low_)];
  }

  int low_ = 0;
  int order_ = -1;
  std::vector<S> coeffs_;
};

/// 1/a. The coefficient at a.low() must be nonzero.
template <class S>
TruncatedSeries<S> inverse(const TruncatedSeries<S>& a) {
  using T = ScalarTraits<S>;
  if (a.order() < a.low()) throw PrecisionError("inverse: series carries no coefficients");
  const S lead = a[a.low()];
  if (T::is_zero(lead)) throw DomainError("inverse: zero coefficient at the declared lowest exponent");
  const int n = a.order() - a.low() + 1;
  std::vector<S> b(static_cast<std::size_t>(n), T::from_int(0));
  const S inv_lead = T::from_int(1) / lead;
  b[0] = inv_lead;
  for (int k = 1; k < n; ++k) {
    S acc = T::from_int(0);
    for (int j = 1; j <= k; ++j) acc = acc + a[a.low() + j] * b[static_cast<std::size_t>(k - j)];
    b[static_cast<std::size_t>(k)] = -acc * inv_lead;
  }
  return TruncatedSeries<S>(-a.low(), std::move(b), a.order() - 2 * a.low());
}

template <class S>
TruncatedSeries<S> derivative(const TruncatedSeries<S>& a) {
  std::vector<S> c;
  for (int e = a.low(); e <= a.order(); ++e) c.push_back(a[e] * ScalarTraits<S>::from_int(e));
  return TruncatedSeries<S>(a.low() - 1, std::move(c), a.order() - 1);
}

/// exp of a power series (low >= 0). Exact scalars need a zero constant term.
template <class S>
TruncatedSeries<S> exp(const TruncatedSeries<S>& a) {
  using T = ScalarTraits<S>;
  if (a.low() < 0) throw DomainError("exp: argument has a pole");
  const int K = a.order();
  if (K < 0) return TruncatedSeries<S>::power({}, K);
  const S c0 = a[0];
  S e0 = T::from_int(1);
  if (!T::is_zero(c0)) e0 = T::exp_const(c0);
  std::vector<S> b(static_cast<std::size_t>(K + 1), T::from_int(0));
  b[0] = e0;
  for (int n = 1; n <= K; ++n) {
    S acc = T::from_int(0);
    for (int k = 1; k <= n; ++k) acc = acc + T::from_int(k) * a[k] * b[static_cast<std::size_t>(n - k)];
    b[static_cast<std::size_t>(n)] = acc / T::from_int(n);
  }
  return TruncatedSeries<S>::power(std::move(b), K);
}

/// log of a power series with nonzero constant term (exactly 1 for exact scalars).
template <class S>
TruncatedSeries<S> log(const TruncatedSeries<S>& a) {
  using T = ScalarTraits<S>;
  if (a.low() < 0) throw DomainError("log: argument has a pole");
  const int K = a.order();
  const S a0 = a[0];
  if (T::is_zero(a0)) throw DomainError("log: constant term is zero");
  std::vector<S> c(static_cast<std::size_t>(K + 1), T::from_int(0));
  c[0] = T::is_one(a0) ? T::from_int(0) : T::log_const(a0);
  for (int n = 1; n <= K; ++n) {
    S acc = T::from_int(0);
    for (int k = 1; k < n; ++k) acc = acc + T::from_int(k) * c[static_cast<std::size_t>(k)] * a[n - k];
    c[static_cast<std::size_t>(n)] = (a[n] - acc / T::from_int(n)) / a0;
  }
  return TruncatedSeries<S>::power(std::move(c), K);
}

/// a(alpha * t^k) for k >= 1.
template <class S>
TruncatedSeries<S> scale_substitute(const TruncatedSeries<S>& a, const S& alpha, int k) {
  using T = ScalarTraits<S>;
  if (k < 1) throw DomainError("scale_substitute: k must be positive");
  const int low = k * a.low();
  const int order = k * (a.order() + 1) - 1;
  std::vector<S> c(static_cast<std::size_t>(std::max(0, order - low + 1)), T::from_int(0));
  S apow = T::from_int(1);
  if (a.low() < 0) {
    const S inv = T::from_int(1) / alpha;
    for (int i = 0; i < -a.low(); ++i) apow = apow * inv;
  } else {
    for (int i = 0; i < a.low(); ++i) apow = apow * alpha;
  }
  for (int e = a.low(); e <= a.order(); ++e) {
    c[static_cast<std::size_t>(k * (e - a.low()))] = a[e] * apow;
    apow = apow * alpha;
  }
  return TruncatedSeries<S>(low, std::move(c), order);
}

/// Power series of exp(c t) through t^order.
template <class S>
TruncatedSeries<S> exp_linear(const S& c, int order) {
  using T = ScalarTraits<S>;
  std::vector<S> v;
  S term = T::from_int(1);
  for (int n = 0; n <= order; ++n) {
    v.push_back(term);
    term = term * c / T::from_int(n + 1);
  }
  return TruncatedSeries<S>::power(std::move(v), order);
}

/// Constant term and residue of f/t; both are the t^0 coefficient of f.
template <class S>
struct LaurentCoefficients {
  S constant_term;
  S residue_of_f_over_t;
};

template <class S>
LaurentCoefficients<S> laurent_constant_and_residue(const TruncatedSeries<S>& f) {
  if (f.order() < 0) throw PrecisionError("laurent_constant_and_residue: exponent 0 not resolved");
  const S c = f[0];
  return {c, c};
}

}  // namespace regprod

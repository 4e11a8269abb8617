#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "regprod/core/arith.hpp"
#include "regprod/core/complex.hpp"
#include "regprod/core/errors.hpp"
#include "regprod/core/real.hpp"
#include "regprod/core/series.hpp"
#include "regprod/dirichlet/character.hpp"
#include "regprod/special/bell.hpp"
#include "regprod/special/bernoulli.hpp"
#include "regprod/special/hurwitz.hpp"

namespace regprod {

/// Order of vanishing of L(s, chi) at s = 0: one from the primitive factor when
/// chi* is even and nontrivial, one per Euler factor 1 - chi*(p) p^{-s} with chi*(p) = 1.
inline int order_of_vanishing(const DirichletCharacter& chi) {
  const auto info = conductor_and_primitive(chi);
  int ord = (info.conductor > 1 && info.primitive.is_even()) ? 1 : 0;
  for (auto p : prime_divisors(chi.modulus()))
    if (info.conductor % p != 0 && info.primitive.index(static_cast<std::int64_t>(p)) == 0) ++ord;
  return ord;
}

template <class Real>
struct LSeriesExpansion {
  std::string character;
  int order_of_vanishing = 0;
  /// Taylor coefficients of L(s, chi) at s = 0.
  TruncatedSeries<Complex<Real>> taylor;
  /// Hurwitz node-doubling estimate summed over the residues.
  Real error_estimate{0};
  /// Largest |coefficient| that theory forces to vanish and was dropped.
  Real dropped_residual{0};
};

template <class Real>
struct PrincipalResidue {
  Real bell_path;
  Real laurent_path;
  Real difference;
};

/// Dirichlet L-functions near s = 0 through the Hurwitz decomposition of the
/// primitive character and exact Euler-factor corrections.
template <class Real>
class LFunctionEngine {
 public:
  using C = Complex<Real>;
  using Series = TruncatedSeries<C>;

  LFunctionEngine() : hz_(HurwitzEvaluator<Real>::for_precision(RealTraits<Real>::precision_bits())) {}
  explicit LFunctionEngine(HurwitzEvaluator<Real> hz) : hz_(std::move(hz)) {}

  const HurwitzEvaluator<Real>& hurwitz() const { return hz_; }

  /// L(0, chi) from the exact finite sum.
  C l_at_zero(const DirichletCharacter& chi) const { return l_at_zero_exact(chi).template to_complex<Real>(); }

  /// L(s, chi) = s^ord * U(s); `unit` holds U through s^{hurwitz_order - v*}.
  struct Reduced {
    int order = 0;
    Series unit;
    Real error_estimate{0};
    Real dropped_residual{0};
  };

  Reduced reduced(const DirichletCharacter& chi, int hurwitz_order) const {
    using std::log;
    using std::abs;
    if (hurwitz_order > HurwitzEvaluator<Real>::kMaxTaylorOrder)
      throw PrecisionError("L-function data for " + chi.label() + " needs Hurwitz Taylor order " +
                           std::to_string(hurwitz_order) + " > 6");
    const auto info = conductor_and_primitive(chi);
    const auto f = info.conductor;
    const auto& prim = info.primitive;
    const int K = hurwitz_order;

    Reduced out;
    std::vector<C> h(static_cast<std::size_t>(K + 1));
    for (std::uint64_t a = 1; a <= f; ++a) {
      const auto idx = prim.index(static_cast<std::int64_t>(a));
      if (idx < 0) continue;
      const auto& t = hurwitz_data(a, f);
      const C w = prim.template value<Real>(static_cast<std::int64_t>(a));
      for (int k = 0; k <= K; ++k) h[static_cast<std::size_t>(k)] += w * t.coeffs[static_cast<std::size_t>(k)];
      out.error_estimate += t.error_estimate;
    }
    Series primitive = Series::power(h, K);
    if (f > 1) primitive = primitive * exp_linear(C(Real(-log(Real(f)))), K);
    const int v_star = (f > 1 && prim.is_even()) ? 1 : 0;
    if (v_star) {
      auto [rest, dropped] = primitive.drop_leading(1);
      out.dropped_residual = abs(dropped[0]);
      primitive = rest.shift(-1);
    }
    out.order = v_star;
    Series unit = primitive;
    const int order = unit.order();
    for (auto p : prime_divisors(chi.modulus())) {
      if (f % p == 0) continue;
      const auto idx = prim.index(static_cast<std::int64_t>(p));
      const Real lp = log(Real(p));
      if (idx == 0) {
        // (1 - e^{-s log p}) / s
        std::vector<C> c;
        Real term = lp;
        for (int k = 0; k <= order; ++k) {
          c.push_back(C(term));
          term = -term * lp / Real(k + 2);
        }
        unit = unit * Series::power(std::move(c), order);
        ++out.order;
      } else {
        const C cp = prim.template value<Real>(static_cast<std::int64_t>(p));
        auto e = exp_linear(C(-lp), order) * (-cp);
        e = e + Series::constant(C(Real(1)), order);
        unit = unit * e;
      }
    }
    out.unit = unit;
    return out;
  }

  int order_of_vanishing(const DirichletCharacter& chi) const { return regprod::order_of_vanishing(chi); }

  /// Taylor coefficients of L(s, chi) at s = 0 through s^K.
  LSeriesExpansion<Real> l_taylor_at_zero(const DirichletCharacter& chi, int K) const {
    const int ord = order_of_vanishing(chi);
    const int v_star = primitive_vanishes(chi) ? 1 : 0;
    const int h = std::max(v_star, K - ord + v_star);
    auto r = reduced(chi, h);
    LSeriesExpansion<Real> out;
    out.character = chi.label();
    out.order_of_vanishing = r.order;
    std::vector<C> full(static_cast<std::size_t>(K + 1));
    for (int e = r.order; e <= K; ++e) full[static_cast<std::size_t>(e)] = r.unit[e - r.order];
    out.taylor = Series::power(std::move(full), K);
    out.error_estimate = r.error_estimate;
    out.dropped_residual = r.dropped_residual;
    return out;
  }

  /// Laurent coefficients of 1/L(t, chi) for t^{-ord} .. t^J.
  Series inverse_l_laurent(const DirichletCharacter& chi, int J) const {
    const int ord = order_of_vanishing(chi);
    const int v_star = primitive_vanishes(chi) ? 1 : 0;
    auto r = reduced(chi, std::max(v_star, J + ord + v_star));
    check_leading(r, chi);
    return inverse(r.unit).shift(-r.order).truncate(J);
  }

  /// Residue of L'/(s L) at 0: L^{(r+1)}(0) / ((r+1) L^{(r)}(0)), r = order of vanishing.
  C logderiv_residue(const DirichletCharacter& chi) const {
    const int v_star = primitive_vanishes(chi) ? 1 : 0;
    auto r = reduced(chi, 1 + v_star);
    check_leading(r, chi);
    return r.unit[1] / r.unit[0];
  }

  /// (1/zeta)^{(j)}(0) for j = 0..K.
  std::vector<Real> inverse_zeta_derivatives(int K) const {
    auto z = Series::power(hurwitz_data(1, 1).coeffs, HurwitzEvaluator<Real>::kMaxTaylorOrder).truncate(K);
    auto inv = inverse(z);
    std::vector<Real> d;
    Real fact(1);
    for (int j = 0; j <= K; ++j) {
      if (j > 0) fact *= j;
      d.push_back(inv[j].re * fact);
    }
    return d;
  }

  /// Res(1/(s L(s, chi0)), s = 0) for modulus m >= 2, by the Bell-polynomial
  /// formula and by direct Laurent inversion.
  PrincipalResidue<Real> principal_residue_b(std::uint64_t m, double tolerance = 1e-8) const {
    using std::log;
    using std::abs;
    if (m < 2) throw DomainError("principal_residue_b: modulus must be >= 2");
    const auto primes = prime_divisors(m);
    const int w = static_cast<int>(primes.size());
    std::vector<Real> logs;
    Real prod_logs(1);
    for (auto p : primes) {
      logs.push_back(log(Real(p)));
      prod_logs *= logs.back();
    }
    std::vector<Real> x;
    for (int n = 1; n <= w; ++n) {
      Real s(0);
      for (const auto& l : logs) s += pow_int(l, n);
      x.push_back(-to_real<Real>(bernoulli(n)) / Real(n) * s);
    }
    const auto inv_zeta = inverse_zeta_derivatives(w);
    Real acc(0);
    Real binom(1);
    for (int j = 0; j <= w; ++j) {
      std::vector<Real> args(x.begin(), x.begin() + (w - j));
      acc += binom * inv_zeta[static_cast<std::size_t>(j)] * complete_bell(args);
      binom = binom * Real(w - j) / Real(j + 1);
    }
    Real wfact(1);
    for (int i = 2; i <= w; ++i) wfact *= i;
    PrincipalResidue<Real> out;
    out.bell_path = acc / (prod_logs * wfact);
    out.laurent_path = inverse_l_laurent(principal_character(m), 0)[0].re;
    out.difference = abs(out.bell_path - out.laurent_path);
    if (out.difference > Real(tolerance))
      throw PrecisionError("principal_residue_b(" + std::to_string(m) + "): Bell and Laurent paths differ by " +
                           format_real(out.difference, 6));
    return out;
  }

  /// L(s, chi) = m^{-s} sum_{a=1}^{m} chi(a) zeta_H(s, a/m), for validation away from 0.
  C l_value(const DirichletCharacter& chi, const C& s) const {
    using std::log;
    const auto m = chi.modulus();
    C acc;
    for (std::uint64_t a = 1; a <= m; ++a) {
      if (chi.index(static_cast<std::int64_t>(a)) < 0) continue;
      acc += chi.template value<Real>(static_cast<std::int64_t>(a)) * hz_.zeta(s, Real(a) / Real(m));
    }
    return acc * exp(-s * C(Real(log(Real(m)))));
  }

 private:
  static Real pow_int(const Real& x, int n) {
    Real r(1);
    for (int i = 0; i < n; ++i) r *= x;
    return r;
  }

  static bool primitive_vanishes(const DirichletCharacter& chi) {
    const auto info = conductor_and_primitive(chi);
    return info.conductor > 1 && info.primitive.is_even();
  }

  void check_leading(const Reduced& r, const DirichletCharacter& chi) const {
    using std::abs;
    if (!(abs(r.unit[0]) > Real(1e-12)))
      throw PrecisionError("leading Taylor coefficient of L(s, " + chi.label() + ") is below tolerance");
  }

  const HurwitzTaylor<Real>& hurwitz_data(std::uint64_t a, std::uint64_t f) const {
    std::lock_guard<std::mutex> lock(mutex_);
    auto key = std::make_pair(a, f);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    auto t = hz_.taylor_at_zero(Real(a) / Real(f), HurwitzEvaluator<Real>::kMaxTaylorOrder);
    return cache_.emplace(key, std::move(t)).first->second;
  }

  HurwitzEvaluator<Real> hz_;
  mutable std::mutex mutex_;
  mutable std::map<std::pair<std::uint64_t, std::uint64_t>, HurwitzTaylor<Real>> cache_;
};

}  // namespace regprod

#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <string>
#include <vector>

#include "regprod/core/arith.hpp"
#include "regprod/core/errors.hpp"
#include "regprod/core/report.hpp"
#include "regprod/core/series.hpp"
#include "regprod/dirichlet/character.hpp"
#include "regprod/lfunc/lfunction.hpp"
#include "regprod/special/gen_bernoulli.hpp"

namespace regprod {

struct ProgressionTarget {
  std::uint64_t m = 1;
  std::uint64_t a = 0;

  ProgressionTarget(std::int64_t modulus, std::int64_t residue) {
    if (modulus < 1) throw DomainError("progression: modulus must be positive");
    m = static_cast<std::uint64_t>(modulus);
    std::int64_t r = residue % modulus;
    if (r < 0) r += modulus;
    a = static_cast<std::uint64_t>(r);
    if (std::gcd(a, m) != 1) throw DomainError("progression: gcd(a, m) must be 1");
  }
};

template <class Real>
struct QTerms {
  Real q_plus{0};
  Real q_minus{0};
  Real q_zero{0};
  /// Largest imaginary part discarded after conjugate pairing.
  Real imag_residual{0};
};

template <class Real>
struct RCoefficient {
  Real value{0};
  Real imag_residual{0};
  /// |direct F_eta expansion - generalized Bernoulli expansion|, over the coefficients used.
  Real bernoulli_crosscheck{0};
};

template <class Real>
struct PrimeSeriesCheck {
  Real direct_sum{0};
  Real moebius_log_sum{0};
  Real difference{0};
};

/// Regularized products over primes in arithmetic progressions.
template <class Real>
class ProgressionEngine {
 public:
  using C = Complex<Real>;
  using Series = TruncatedSeries<C>;

  ProgressionEngine() = default;
  explicit ProgressionEngine(HurwitzEvaluator<Real> hz) : lf_(std::move(hz)) {}

  const LFunctionEngine<Real>& lfunctions() const { return lf_; }

  /// log(2 pi / sqrt(prod_{p | m} p)), the residue of L'/(sL) for the principal character.
  static Real principal_logderiv(std::uint64_t m) {
    using std::log;
    Real r = log(2 * pi<Real>());
    for (auto p : prime_divisors(m)) r -= log(Real(p)) / 2;
    return r;
  }

  QTerms<Real> q_terms(std::uint64_t n, const ProgressionTarget& t) const {
    using std::abs;
    if (n == 0) throw DomainError("q_terms: n must be positive");
    const auto chars = enumerate_characters(t.m);
    const Real phi(static_cast<double>(euler_phi(t.m)));
    std::vector<C> plus(chars.size()), minus(chars.size()), zero(chars.size());
    for (std::size_t i = 0; i < chars.size(); ++i) {
      const auto psi = chars[i].power(static_cast<std::int64_t>(n));
      const C weight = chars[i].inverse().template value<Real>(static_cast<std::int64_t>(t.a));
      if (psi.is_principal()) zero[i] = weight * C(principal_logderiv(t.m));
      if (!psi.is_even()) {
        minus[i] = weight * logderiv(psi);
      } else if (!psi.is_principal()) {
        plus[i] = weight * logderiv(psi);
      }
    }
    QTerms<Real> q;
    q.q_plus = paired_sum(chars, plus, q.imag_residual) / phi;
    q.q_minus = paired_sum(chars, minus, q.imag_residual) / phi;
    q.q_zero = paired_sum(chars, zero, q.imag_residual) / phi;
    q.imag_residual /= phi;
    return q;
  }

  /// F_eta(t) = e^{-t log d} / prod_{p | d} (1 - eta(p) e^{-t log p}) by direct series division.
  Series f_eta_direct(const DirichletCharacter& eta, std::uint64_t d, int order) const {
    using std::log;
    const int ord = order + 2 * static_cast<int>(prime_divisors(d).size()) + 2;
    auto f = exp_linear(C(Real(-log(Real(d)))), ord);
    for (auto p : prime_divisors(d)) {
      const C ep = eta.template value<Real>(static_cast<std::int64_t>(p));
      auto factor = Series::constant(C(Real(1)), ord) - exp_linear(C(Real(-log(Real(p)))), ord) * ep;
      if (eta.index(static_cast<std::int64_t>(p)) == 0) factor = factor.drop_leading(1).first;
      f = f * inverse(factor);
    }
    return f.truncate(order);
  }

  /// The same expansion from the generalized Bernoulli series:
  /// F_eta = (-1)^{omega(d)} t^{-omega(d)} * [t^l e^{xt} / prod (eta(p) e^{-t log p} - 1)], x = -log d.
  Series f_eta_bernoulli(const DirichletCharacter& eta, std::uint64_t d, int order) const {
    using std::log;
    const auto primes = prime_divisors(d);
    const int ell = static_cast<int>(primes.size());
    std::vector<C> alphas, avals;
    for (auto p : primes) {
      alphas.push_back(eta.template value<Real>(static_cast<std::int64_t>(p)));
      avals.push_back(C(Real(-log(Real(p)))));
    }
    auto g = generalized_bernoulli_series(C(Real(-log(Real(d)))), alphas, avals, order + ell);
    if (ell % 2) g = -g;
    return g.shift(-ell);
  }

  /// R_{N,r}: the regularized value of sum_{l >= 0} mu(N l + r) (N l + r)^{-t} at t = 0.
  RCoefficient<Real> r_coefficient(std::uint64_t N, std::uint64_t r) const {
    using std::abs;
    if (N == 0 || r == 0 || r > N) throw DomainError("r_coefficient: need 1 <= r <= N");
    RCoefficient<Real> out;
    const std::uint64_t d = std::gcd(N, r);
    const int mu_d = mobius(d);
    if (mu_d == 0) return out;
    const std::uint64_t M = N / d;
    const std::uint64_t r_red = r / d;
    const auto etas = enumerate_characters(M);
    std::vector<C> terms(etas.size());
    for (std::size_t i = 0; i < etas.size(); ++i) {
      const auto& eta = etas[i];
      int poles = 0;
      for (auto p : prime_divisors(d))
        if (eta.index(static_cast<std::int64_t>(p)) == 0) ++poles;
      const int ord = lf_.order_of_vanishing(eta);
      const auto inv_l = lf_.inverse_l_laurent(eta, poles);
      const auto f = f_eta_direct(eta, d, ord);
      if (d > 1) {
        const auto fb = f_eta_bernoulli(eta, d, ord);
        for (int e = -poles; e <= ord; ++e)
          out.bernoulli_crosscheck = std::max(out.bernoulli_crosscheck, Real(abs(fb[e] - f[e])));
      }
      const auto ct = laurent_constant_and_residue(f * inv_l).constant_term;
      terms[i] = eta.inverse().template value<Real>(static_cast<std::int64_t>(r_red)) * ct;
    }
    const Real phi_m(static_cast<double>(euler_phi(M)));
    const Real sum = paired_sum(etas, terms, out.imag_residual);
    out.value = Real(mu_d) * sum / phi_m;
    out.imag_residual /= phi_m;
    return out;
  }

  /// Coprime-case formula: (1/phi(N)) [ sum over odd eta of eta-bar(r)/L(0, eta)
  /// - sum over even non-principal eta of eta-bar(r) L''(0)/(2 L'(0)^2) + b_{omega(N)} ].
  /// Characters whose L-function vanishes to a higher order fall back to the Laurent data.
  Real r_coefficient_coprime(std::uint64_t N, std::uint64_t r) const {
    if (std::gcd(N, r) != 1) throw DomainError("r_coefficient_coprime: gcd(N, r) must be 1");
    const auto etas = enumerate_characters(N);
    C acc;
    for (const auto& eta : etas) {
      const C w = eta.inverse().template value<Real>(static_cast<std::int64_t>(r));
      const int ord = lf_.order_of_vanishing(eta);
      C l0;
      if (eta.is_principal()) {
        l0 = N == 1 ? C(Real(1)) / lf_.l_taylor_at_zero(eta, 0).taylor[0]
                    : C(lf_.principal_residue_b(N).bell_path);
      } else if (ord == 0) {
        l0 = C(Real(1)) / lf_.l_at_zero(eta);
      } else if (ord == 1) {
        const auto t = lf_.l_taylor_at_zero(eta, 2);
        l0 = -t.taylor[2] / (t.taylor[1] * t.taylor[1]);
      } else {
        l0 = lf_.inverse_l_laurent(eta, 0)[0];
      }
      acc += w * l0;
    }
    return acc.re / Real(static_cast<double>(euler_phi(N)));
  }

  /// exp(-sum_{r=1}^{phi(m)} (Q_r^+ + Q_r^- + Q_r^0) R_{phi(m), r}).
  RegProdReport<Real> regprod_progression(const ProgressionTarget& t) const {
    using std::exp;
    using std::abs;
    RegProdReport<Real> rep;
    rep.kind = "progression";
    const std::uint64_t N = euler_phi(t.m);
    Real exponent(0);
    Real imag(0), rimag(0), bern(0);
    for (std::uint64_t r = 1; r <= N; ++r) {
      const auto q = q_terms(r, t);
      const auto R = r_coefficient(N, r);
      const Real contribution = -(q.q_plus + q.q_minus + q.q_zero) * R.value;
      exponent += contribution;
      imag = std::max(imag, q.imag_residual);
      rimag = std::max(rimag, R.imag_residual);
      bern = std::max(bern, R.bernoulli_crosscheck);
      rep.breakdown.push_back({"r=" + std::to_string(r),
                               {{"q_plus", q.q_plus},
                                {"q_minus", q.q_minus},
                                {"q_zero", q.q_zero},
                                {"R", R.value},
                                {"contribution", contribution}}});
    }
    rep.exponent = exponent;
    rep.value = exp(exponent);
    rep.residuals["q_imaginary"] = to_double(imag);
    rep.residuals["r_imaginary"] = to_double(rimag);
    rep.residuals["f_eta_bernoulli_vs_direct"] = to_double(bern);
    if (t.m == 2) rep.notes.push_back("m = 2 covers the odd primes: half of the all-primes product 4 pi^2");
    return rep;
  }

  /// Sum_{p = a mod m, p <= bound} p^{-s} against the truncated Moebius identity
  /// sum_{n <= 25} mu(n)/(n phi(m)) sum_chi chi-bar(a) log L(ns, chi^n).
  PrimeSeriesCheck<Real> prime_series_check(const Real& s, const ProgressionTarget& t, std::uint32_t bound) const {
    using std::log;
    using std::exp;
    using std::abs;
    if (!(s >= Real(1.5))) throw DomainError("prime_series_check: s must be >= 1.5");
    if (bound > 10000000u) throw DomainError("prime_series_check: prime bound must be <= 10^7");
    PrimeSeriesCheck<Real> out;
    const auto primes = primes_up_to(bound);
    // smallest terms first
    for (auto it = primes.rbegin(); it != primes.rend(); ++it)
      if (*it % t.m == t.a % t.m) out.direct_sum += exp(-s * log(Real(*it)));
    const auto chars = enumerate_characters(t.m);
    C acc;
    for (int n = 1; n <= 25; ++n) {
      const int mu = mobius(static_cast<std::uint64_t>(n));
      if (mu == 0) continue;
      C inner;
      for (const auto& chi : chars) {
        const auto psi = chi.power(n);
        const C lv = lf_.l_value(psi, C(Real(n) * s));
        inner += chi.inverse().template value<Real>(static_cast<std::int64_t>(t.a)) * log(lv);
      }
      acc += inner * C(Real(mu) / Real(n));
    }
    out.moebius_log_sum = acc.re / Real(static_cast<double>(euler_phi(t.m)));
    out.difference = out.direct_sum - out.moebius_log_sum;
    return out;
  }

 private:
  C logderiv(const DirichletCharacter& psi) const {
    std::lock_guard<std::mutex> lock(mutex_);
    auto key = psi.label();
    auto it = logderiv_cache_.find(key);
    if (it != logderiv_cache_.end()) return it->second;
    const C v = lf_.logderiv_residue(psi);
    logderiv_cache_.emplace(key, v);
    return v;
  }

  /// Real part of sum z_chi with conjugate characters paired; the largest
  /// deviation from exact pairing is folded into `residual`.
  static Real paired_sum(const std::vector<DirichletCharacter>& chars, const std::vector<C>& z, Real& residual) {
    using std::abs;
    Real s(0);
    std::vector<bool> done(chars.size(), false);
    for (std::size_t i = 0; i < chars.size(); ++i) {
      if (done[i]) continue;
      const auto inv = chars[i].inverse();
      std::size_t j = i;
      for (std::size_t k = i; k < chars.size(); ++k)
        if (chars[k] == inv) {
          j = k;
          break;
        }
      done[i] = done[j] = true;
      if (j == i) {
        s += z[i].re;
        residual = std::max(residual, Real(abs(z[i].im)));
      } else {
        s += z[i].re + z[j].re;
        residual = std::max(residual, Real(abs(z[i].im + z[j].im)));
      }
    }
    return s;
  }

  LFunctionEngine<Real> lf_;
  mutable std::mutex mutex_;
  mutable std::map<std::string, C> logderiv_cache_;
};

}  // namespace regprod

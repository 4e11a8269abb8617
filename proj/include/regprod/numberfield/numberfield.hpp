#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "regprod/core/arith.hpp"
#include "regprod/core/errors.hpp"
#include "regprod/core/report.hpp"
#include "regprod/dirichlet/character.hpp"
#include "regprod/lfunc/lfunction.hpp"

namespace regprod {

/// Kronecker symbol (D / n) for n >= 1.
inline int kronecker_symbol(std::int64_t D, std::int64_t n) {
  if (n <= 0) throw DomainError("kronecker_symbol: n must be positive");
  int result = 1;
  while (n % 2 == 0) {
    n /= 2;
    if (D % 2 == 0) return 0;
    const std::int64_t r = ((D % 8) + 8) % 8;
    if (r == 3 || r == 5) result = -result;
  }
  // Jacobi symbol (D / n), n odd
  std::int64_t a = ((D % n) + n) % n;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      const std::int64_t r = n % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

inline bool is_fundamental_discriminant(std::int64_t D) {
  if (D == 1) return true;
  if (D == 0) return false;
  const std::int64_t r = ((D % 4) + 4) % 4;
  const auto absd = static_cast<std::uint64_t>(D < 0 ? -D : D);
  if (r == 1) return is_squarefree(absd);
  if (r != 0) return false;
  const std::int64_t k = D / 4;
  const std::int64_t rk = ((k % 4) + 4) % 4;
  return (rk == 2 || rk == 3) && is_squarefree(absd / 4);
}

/// The real character n -> (D / n) mod |D|.
inline DirichletCharacter kronecker_character(std::int64_t D) {
  if (!is_fundamental_discriminant(D)) throw DomainError("kronecker_character: " + std::to_string(D) + " is not a fundamental discriminant");
  const auto m = static_cast<std::uint64_t>(D < 0 ? -D : D);
  if (m == 1) return principal_character(1);
  auto chi = character_from_indices(m, 2, [&](std::uint64_t a) -> std::int64_t {
    return kronecker_symbol(D, static_cast<std::int64_t>(a)) == 1 ? 0 : 1;
  });
  if (chi.parity() != (D > 0 ? 1 : -1)) throw DomainError("kronecker_character: parity does not match sign(D)");
  return chi;
}

template <class Real>
struct NumberFieldData {
  std::string name;
  int r1 = 1;
  int r2 = 0;
  int w = 2;
  int h = 1;
  Real regulator{1};
  /// 1 for Q, the fundamental discriminant for a quadratic field.
  std::int64_t discriminant = 1;

  int degree() const { return r1 + 2 * r2; }

  void validate() const {
    if (r1 < 0 || r2 < 0 || r1 + r2 < 1) throw DomainError("number field: need r1, r2 >= 0 and r1 + r2 >= 1");
    if (w < 1 || h < 1) throw DomainError("number field: w and h must be positive");
    if (!(regulator > 0)) throw DomainError("number field: regulator must be positive");
    if (degree() > 2) throw DomainError("number field: only Q and quadratic fields are supported");
    if (degree() == 1 && discriminant != 1) throw DomainError("number field: Q has discriminant 1");
    if (degree() == 2) {
      if (!is_fundamental_discriminant(discriminant) || discriminant == 1)
        throw DomainError("number field: quadratic field needs a fundamental discriminant");
      if ((discriminant > 0) != (r1 == 2)) throw DomainError("number field: signature does not match sign(D)");
    }
  }
};

inline std::vector<std::string> number_field_preset_names() { return {"Q", "Q(i)", "Q(sqrt5)", "Q(sqrt-3)"}; }

template <class Real>
NumberFieldData<Real> number_field_preset(const std::string& name) {
  using std::log;
  using std::sqrt;
  if (name == "Q") return {"Q", 1, 0, 2, 1, Real(1), 1};
  if (name == "Q(i)") return {"Q(i)", 0, 1, 4, 1, Real(1), -4};
  if (name == "Q(sqrt5)") return {"Q(sqrt5)", 2, 0, 2, 1, Real(log((1 + sqrt(Real(5))) / 2)), 5};
  if (name == "Q(sqrt-3)") return {"Q(sqrt-3)", 0, 1, 6, 1, Real(1), -3};
  throw DomainError("unknown number field preset '" + name + "'");
}

template <class Real>
struct LeadingCheck {
  Real expected;
  Real computed;
  Real relative_error;
};

/// Dedekind zeta data at s = 0 and the number-field product.
template <class Real>
class NumberFieldEngine {
 public:
  using C = Complex<Real>;

  NumberFieldEngine() = default;
  explicit NumberFieldEngine(HurwitzEvaluator<Real> hz) : lf_(std::move(hz)) {}

  const LFunctionEngine<Real>& lfunctions() const { return lf_; }

  /// Taylor coefficients of zeta_K at 0 through s^K (K <= 4).
  std::vector<Real> dedekind_zeta_taylor0(const NumberFieldData<Real>& field, int K) const {
    field.validate();
    if (K < 0 || K > 4) throw DomainError("dedekind_zeta_taylor0: order must be in [0, 4]");
    const auto z = lf_.l_taylor_at_zero(principal_character(1), K).taylor;
    std::vector<Real> out;
    if (field.degree() == 1) {
      for (int k = 0; k <= K; ++k) out.push_back(z[k].re);
      return out;
    }
    const auto l = lf_.l_taylor_at_zero(kronecker_character(field.discriminant), K).taylor;
    const auto prod = TruncatedSeries<C>::power(z.coefficients(), K) * TruncatedSeries<C>::power(l.coefficients(), K);
    for (int k = 0; k <= K; ++k) out.push_back(prod[k].re);
    return out;
  }

  LeadingCheck<Real> leading_check(const NumberFieldData<Real>& field, double tolerance = 1e-8) const {
    using std::abs;
    const int n = field.r1 + field.r2;
    const auto t = dedekind_zeta_taylor0(field, n);
    LeadingCheck<Real> c;
    c.expected = -Real(field.h) * field.regulator / Real(field.w);
    c.computed = t[static_cast<std::size_t>(n - 1)];
    c.relative_error = abs(c.computed - c.expected) / abs(c.expected);
    if (c.relative_error > Real(tolerance))
      throw ValidationError("leading_check failed for " + field.name + ": expected -hR/w = " +
                            format_real(c.expected, 15) + ", Taylor coefficient " + std::to_string(n - 1) +
                            " is " + format_real(c.computed, 15));
    return c;
  }

  /// exp(-(2 w / ((r1 + r2) h R)) zeta_K^{(r1+r2)}(0)).
  RegProdReport<Real> regprod_number_field(const NumberFieldData<Real>& field) const {
    using std::exp;
    const auto check = leading_check(field);
    const int n = field.r1 + field.r2;
    const auto t = dedekind_zeta_taylor0(field, n);
    Real nfact(1);
    for (int i = 2; i <= n; ++i) nfact *= i;
    const Real deriv = nfact * t[static_cast<std::size_t>(n)];
    RegProdReport<Real> rep;
    rep.kind = "number-field";
    rep.exponent = -Real(2 * field.w) / (Real(n * field.h) * field.regulator) * deriv;
    rep.value = exp(rep.exponent);
    BreakdownRow<Real> row{"dedekind_zeta_taylor", {}};
    for (int k = 0; k <= n; ++k) row.fields.push_back({"c" + std::to_string(k), t[static_cast<std::size_t>(k)]});
    rep.breakdown.push_back(row);
    rep.breakdown.push_back({"leading_check", {{"expected", check.expected}, {"computed", check.computed}}});
    rep.residuals["leading_check_relative"] = to_double(check.relative_error);
    return rep;
  }

  /// The product over all rational primes, i.e. the number-field product for K = Q.
  RegProdReport<Real> regprod_all_primes() const {
    auto rep = regprod_number_field(number_field_preset<Real>("Q"));
    rep.kind = "primes";
    return rep;
  }

 private:
  LFunctionEngine<Real> lf_;
};

}  // namespace regprod

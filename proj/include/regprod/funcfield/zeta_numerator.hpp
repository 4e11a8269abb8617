#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <initializer_list>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "regprod/core/arith.hpp"
#include "regprod/core/bigrational.hpp"
#include "regprod/core/complex.hpp"
#include "regprod/core/errors.hpp"
#include "regprod/core/real.hpp"
#include "regprod/core/report.hpp"
#include "regprod/core/series.hpp"
#include "regprod/funcfield/curve.hpp"

namespace regprod {

enum class WeilStatus { unchecked, validated, violated };

inline const char* to_string(WeilStatus s) {
  switch (s) {
    case WeilStatus::validated: return "validated";
    case WeilStatus::violated: return "violated";
    default: return "unchecked";
  }
}

/// L(t) with Z(X, t) = L(t) / ((1 - t)(1 - q t)).
struct ZetaNumerator {
  /// Integer coefficients, low to high; coeffs[0] = 1.
  std::vector<BigInt> coeffs;
  std::uint64_t q = 2;
  int genus = 0;
  WeilStatus weil_status = WeilStatus::unchecked;
  std::string weil_details;
  /// max_i ||pi_i| - sqrt(q)|, filled by weil_validate.
  double weil_deviation = 0;
  /// Relative residual of the polished roots.
  double root_residual = 0;
  bool functional_equation = false;
  std::vector<std::complex<long double>> inverse_roots;

  int degree() const {
    for (int i = static_cast<int>(coeffs.size()) - 1; i > 0; --i)
      if (coeffs[static_cast<std::size_t>(i)] != 0) return i;
    return 0;
  }

  BigInt coeff(int i) const {
    return i >= 0 && i < static_cast<int>(coeffs.size()) ? coeffs[static_cast<std::size_t>(i)] : BigInt(0);
  }

  std::string to_string() const {
    std::string s;
    for (int i = 0; i <= degree(); ++i) {
      const BigInt c = coeff(i);
      if (c == 0) continue;
      const bool neg = c < 0;
      const BigInt a = neg ? BigInt(-c) : c;
      if (s.empty()) {
        s += neg ? "-" : "";
      } else {
        s += neg ? " - " : " + ";
      }
      if (i == 0 || a != 1) s += a.str();
      if (i > 0) s += "t" + (i > 1 ? "^" + std::to_string(i) : std::string());
    }
    return s.empty() ? "0" : s;
  }

  friend bool operator==(const ZetaNumerator& a, const ZetaNumerator& b) {
    if (a.q != b.q || a.degree() != b.degree()) return false;
    for (int i = 0; i <= a.degree(); ++i)
      if (a.coeff(i) != b.coeff(i)) return false;
    return true;
  }
};

inline ZetaNumerator make_numerator(std::vector<BigInt> coeffs, std::uint64_t q, int genus) {
  if (genus < 0) throw DomainError("zeta numerator: genus must be nonnegative");
  if (q < 2) throw DomainError("zeta numerator: q must be >= 2");
  if (coeffs.empty() || coeffs[0] != 1) throw DomainError("zeta numerator: L(0) must be 1");
  ZetaNumerator L;
  L.coeffs = std::move(coeffs);
  L.q = q;
  L.genus = genus;
  if (L.degree() > 2 * genus) throw DomainError("zeta numerator: degree exceeds 2g");
  L.coeffs.resize(static_cast<std::size_t>(2 * genus + 1), BigInt(0));
  return L;
}

inline ZetaNumerator make_numerator(std::initializer_list<long long> coeffs, std::uint64_t q, int genus) {
  std::vector<BigInt> c(coeffs.begin(), coeffs.end());
  return make_numerator(std::move(c), q, genus);
}

/// L(t) = q^g t^{2g} L(1/(q t)), coefficientwise: a_{2g-i} = q^{g-i} a_i.
inline bool satisfies_functional_equation(const ZetaNumerator& L) {
  const int g = L.genus;
  BigInt qp = 1;
  for (int i = g; i >= 0; --i) {
    // qp = q^{g-i}
    if (L.coeff(2 * g - i) != qp * L.coeff(i)) return false;
    qp *= L.q;
  }
  return true;
}

namespace detail {

inline std::vector<BigRational> log_of_exact(const std::vector<BigRational>& a, int K) {
  auto s = log(TruncatedSeries<BigRational>::power(a, K));
  std::vector<BigRational> out;
  for (int k = 0; k <= K; ++k) out.push_back(s[k]);
  return out;
}

}  // namespace detail

/// L(t) from N_1..N_{2g}: exp(sum N_m t^m / m) (1 - t)(1 - q t), truncated to t^{2g}.
inline ZetaNumerator numerator_from_counts(const std::vector<std::uint64_t>& counts, std::uint64_t q, int g) {
  if (g < 0) throw DomainError("numerator_from_counts: genus must be nonnegative");
  if (counts.size() != static_cast<std::size_t>(2 * g))
    throw DomainError("numerator_from_counts: need exactly 2g = " + std::to_string(2 * g) + " counts, got " +
                      std::to_string(counts.size()));
  const int K = 2 * g;
  using S = TruncatedSeries<BigRational>;
  std::vector<BigRational> lz(static_cast<std::size_t>(K + 1), BigRational(0));
  for (int m = 1; m <= K; ++m) lz[static_cast<std::size_t>(m)] = BigRational(BigInt(counts[static_cast<std::size_t>(m - 1)]), m);
  const S Z = exp(S::power(lz, K));
  const S factor = S::power({BigRational(1), BigRational(-1) - BigRational(q), BigRational(q)}, K);
  const S L = Z * factor;
  std::vector<BigInt> c;
  for (int i = 0; i <= K; ++i) {
    const BigRational v = L[i];
    if (!is_integer(v))
      throw DomainError("numerator_from_counts: coefficient of t^" + std::to_string(i) + " is " + v.str() +
                        ", counts are inconsistent");
    c.push_back(numerator(v));
  }
  auto out = make_numerator(std::move(c), q, g);
  out.functional_equation = satisfies_functional_equation(out);
  return out;
}

/// N_1..N_M implied by L: N_m = q^m + 1 + m [t^m] log L(t).
inline std::vector<BigInt> predict_counts(const ZetaNumerator& L, int M) {
  std::vector<BigRational> a;
  for (int i = 0; i <= std::max(M, L.degree()); ++i) a.push_back(BigRational(L.coeff(i)));
  const auto lg = detail::log_of_exact(a, M);
  std::vector<BigInt> out;
  BigInt qm = 1;
  for (int m = 1; m <= M; ++m) {
    qm *= L.q;
    const BigRational n = BigRational(qm + 1) + BigRational(m) * lg[static_cast<std::size_t>(m)];
    if (!is_integer(n)) throw DomainError("predict_counts: non-integer count, L is not a zeta numerator");
    out.push_back(numerator(n));
  }
  return out;
}

namespace detail {

// Exact polynomials over Q, index = power of x.
using QPoly = std::vector<BigRational>;

inline void trim(QPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline QPoly derivative(const QPoly& a) {
  QPoly d;
  for (std::size_t i = 1; i < a.size(); ++i) d.push_back(a[i] * BigRational(static_cast<long long>(i)));
  trim(d);
  return d;
}

inline std::pair<QPoly, QPoly> divmod(QPoly a, const QPoly& b) {
  trim(a);
  if (b.empty()) throw DomainError("polynomial division by zero");
  if (a.size() < b.size()) return {QPoly{}, a};
  QPoly q(a.size() - b.size() + 1, BigRational(0));
  for (std::size_t k = q.size(); k-- > 0;) {
    const BigRational c = a[k + b.size() - 1] / b.back();
    q[k] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[k + i] -= c * b[i];
  }
  a.resize(b.size() - 1);
  trim(a);
  trim(q);
  return {q, a};
}

inline QPoly monic(QPoly a) {
  trim(a);
  const BigRational lead = a.back();
  for (auto& c : a) c /= lead;
  return a;
}

inline QPoly gcd(QPoly a, QPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

inline QPoly sub(QPoly a, const QPoly& b) {
  if (a.size() < b.size()) a.resize(b.size(), BigRational(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

// Yun's square-free decomposition of a monic f: pairs (a_i, i) with f = prod a_i^i.
inline std::vector<std::pair<QPoly, int>> squarefree_decomposition(const QPoly& f) {
  std::vector<std::pair<QPoly, int>> out;
  const QPoly df = derivative(f);
  if (df.empty()) return out;
  const QPoly a0 = gcd(f, df);
  QPoly b = divmod(f, a0).first;
  QPoly c = divmod(df, a0).first;
  QPoly d = sub(c, derivative(b));
  for (int i = 1; b.size() > 1; ++i) {
    const QPoly a = gcd(b, d);
    b = divmod(b, a).first;
    c = divmod(d, a).first;
    d = sub(c, derivative(b));
    if (a.size() > 1) out.push_back({a, i});
  }
  return out;
}

// Roots of a square-free monic polynomial with rational coefficients.
inline std::vector<std::complex<long double>> simple_roots(const QPoly& f, double& worst) {
  using Cx = std::complex<long double>;
  const int d = static_cast<int>(f.size()) - 1;
  std::vector<long double> a;
  for (const auto& c : f) a.push_back(to_real<long double>(c));
  using Mat = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
  Mat C = Mat::Zero(d, d);
  for (int i = 1; i < d; ++i) C(i, i - 1) = 1;
  for (int i = 0; i < d; ++i) C(i, d - 1) = -a[static_cast<std::size_t>(i)];
  Eigen::EigenSolver<Mat> es(C, false);
  if (es.info() != Eigen::Success) throw PrecisionError("inverse_roots: eigenvalue iteration did not converge");
  const auto ev = es.eigenvalues();
  auto eval = [&](const Cx& x, Cx& dp) {
    Cx p = 0;
    dp = 0;
    for (int i = d; i >= 0; --i) {
      dp = dp * x + p;
      p = p * x + a[static_cast<std::size_t>(i)];
    }
    return p;
  };
  std::vector<Cx> roots;
  for (int i = 0; i < d; ++i) {
    Cx x = ev(i);
    for (int it = 0; it < 8; ++it) {
      Cx dp;
      const Cx p = eval(x, dp);
      if (std::abs(dp) == 0) break;
      const Cx step = p / dp;
      // keep Newton from hopping to a neighbouring root
      if (std::abs(step) > 1e-3L * std::max<long double>(1, std::abs(x))) break;
      x -= step;
      if (std::abs(step) <= 1e-19L * std::abs(x)) break;
    }
    Cx dp;
    const Cx p = eval(x, dp);
    long double scale = 0;
    long double xp = 1;
    for (int j = 0; j <= d; ++j) {
      scale += std::abs(a[static_cast<std::size_t>(j)]) * xp;
      xp *= std::abs(x);
    }
    worst = std::max(worst, static_cast<double>(std::abs(p) / scale));
    roots.push_back(x);
  }
  return roots;
}

}  // namespace detail

/// Roots of P(x) = x^{2g} L(1/x), i.e. the inverse roots of L. The exact
/// square-free decomposition of P separates repeated roots; each square-free
/// factor is solved by companion eigenvalues followed by Newton polishing.
inline std::vector<std::complex<long double>> inverse_roots(const ZetaNumerator& L, double* residual = nullptr) {
  using Cx = std::complex<long double>;
  const int d = L.degree();
  std::vector<Cx> roots;
  if (residual) *residual = 0;
  if (d == 0) return roots;
  detail::QPoly P(static_cast<std::size_t>(d + 1));
  for (int j = 0; j <= d; ++j) P[static_cast<std::size_t>(j)] = BigRational(L.coeff(d - j));
  double worst = 0;
  for (const auto& [factor, mult] : detail::squarefree_decomposition(P)) {
    for (const auto& r : detail::simple_roots(factor, worst))
      for (int k = 0; k < mult; ++k) roots.push_back(r);
  }
  if (static_cast<int>(roots.size()) != d) throw PrecisionError("inverse_roots: square-free decomposition lost roots");
  std::sort(roots.begin(), roots.end(), [](const Cx& u, const Cx& v) {
    return u.real() != v.real() ? u.real() < v.real() : u.imag() < v.imag();
  });
  if (residual) *residual = worst;
  return roots;
}

/// Sets weil_status from the inverse-root magnitudes and the exact functional equation.
inline ZetaNumerator weil_validate(ZetaNumerator L, double tol = 1e-9) {
  double residual = 0;
  L.inverse_roots = inverse_roots(L, &residual);
  L.root_residual = residual;
  L.functional_equation = satisfies_functional_equation(L);
  const long double sq = std::sqrt(static_cast<long double>(L.q));
  double dev = 0;
  std::ostringstream bad;
  bad.precision(12);
  for (const auto& pi : L.inverse_roots) {
    const double e = static_cast<double>(std::abs(std::abs(pi) - sq));
    dev = std::max(dev, e);
    if (e > tol) bad << (bad.tellp() > 0 ? ", " : "") << static_cast<double>(std::abs(pi));
  }
  if (L.degree() != 2 * L.genus) dev = std::max(dev, 1.0);
  L.weil_deviation = dev;
  std::string details;
  if (L.degree() != 2 * L.genus) details = "degree " + std::to_string(L.degree()) + " != 2g = " + std::to_string(2 * L.genus);
  if (bad.tellp() > 0) {
    if (!details.empty()) details += "; ";
    details += "inverse-root magnitudes " + bad.str() + " differ from sqrt(q) = " +
               format_real(static_cast<double>(sq), 12);
  }
  if (!L.functional_equation) {
    if (!details.empty()) details += "; ";
    details += "L(t) != q^g t^2g L(1/(q t))";
  }
  L.weil_status = details.empty() ? WeilStatus::validated : WeilStatus::violated;
  L.weil_details = details;
  return L;
}

/// 1 - 2 (L'(1)/L(1) + q/(1 - q)), exact.
inline BigRational funcfield_exponent(const ZetaNumerator& L) {
  BigInt l1 = 0;
  BigInt dl1 = 0;
  for (int i = 0; i <= L.degree(); ++i) {
    l1 += L.coeff(i);
    dl1 += L.coeff(i) * i;
  }
  if (l1 == 0) throw DomainError("regprod_funcfield: L(1) = 0");
  const BigRational q(L.q);
  return BigRational(1) - 2 * (BigRational(dl1, l1) + q / (1 - q));
}

template <class Real>
RegProdReport<Real> regprod_funcfield(const ZetaNumerator& L) {
  using std::exp;
  RegProdReport<Real> rep;
  rep.kind = "function-field";
  const BigRational e = funcfield_exponent(L);
  rep.exact_exponent = e;
  rep.exponent = to_real<Real>(e);
  rep.value = exp(rep.exponent);
  BigInt l1 = 0;
  BigInt dl1 = 0;
  for (int i = 0; i <= L.degree(); ++i) {
    l1 += L.coeff(i);
    dl1 += L.coeff(i) * i;
  }
  rep.breakdown.push_back({"L(t) = " + L.to_string(),
                           {{"q", Real(static_cast<double>(L.q))},
                            {"genus", Real(L.genus)},
                            {"L(1)", to_real<Real>(l1)},
                            {"L'(1)", to_real<Real>(dl1)}}});
  if (L.weil_status != WeilStatus::unchecked) rep.residuals["weil_deviation"] = L.weil_deviation;
  if (e != 0)
    rep.notes.push_back("exponent is a nonzero rational, so the product is irrational and X has infinitely many closed points");
  return rep;
}

/// 2 (1/2 + sum 1/(1 - pi_i) - 2g + q/(q - 1)).
template <class Real>
Real regprod_funcfield_via_roots(const std::vector<Complex<Real>>& pis, int g, std::uint64_t q) {
  using std::abs;
  if (pis.size() != static_cast<std::size_t>(2 * g)) throw DomainError("regprod_funcfield_via_roots: need 2g inverse roots");
  Complex<Real> acc(Real(0));
  for (const auto& pi : pis) {
    const Complex<Real> d = Complex<Real>(Real(1)) - pi;
    if (abs(d) == 0) throw DomainError("regprod_funcfield_via_roots: inverse root equals 1");
    acc += Complex<Real>(Real(1)) / d;
  }
  const Real qr(static_cast<double>(q));
  return 2 * (Real(1) / 2 + acc.re - Real(2 * g) + qr / (qr - 1));
}

inline std::vector<Complex<long double>> to_complex_roots(const std::vector<std::complex<long double>>& r) {
  std::vector<Complex<long double>> out;
  for (const auto& z : r) out.emplace_back(z.real(), z.imag());
  return out;
}

/// Jacobi sum J(chi^a, chi^b) over F_p, chi of order ell sending the primitive root to e^{2 pi i / ell}.
inline std::complex<long double> jacobi_sum(std::uint64_t ell, std::uint64_t p, std::uint64_t a, std::uint64_t b) {
  const std::uint64_t g = primitive_root_prime_power(p, 1);
  std::vector<std::uint64_t> dlog(p, 0);
  std::uint64_t x = 1;
  for (std::uint64_t k = 0; k + 1 < p; ++k) {
    dlog[x] = k;
    x = x * g % p;
  }
  const long double tau = 2 * std::acos(-1.0L);
  std::complex<long double> J = 0;
  for (std::uint64_t u = 2; u < p; ++u) {
    const std::uint64_t v = p + 1 - u;  // 1 - u mod p
    const std::uint64_t e = (a * dlog[u] + b * dlog[v]) % ell;
    J += std::polar(1.0L, tau * static_cast<long double>(e) / static_cast<long double>(ell));
  }
  return J;
}

/// Zeta numerator of x^ell + y^ell + z^ell = 0 over F_p from Jacobi sums.
inline ZetaNumerator jacobi_fermat_numerator(std::uint64_t ell, std::uint64_t p, double* rounding_residual = nullptr) {
  if (ell < 3 || !is_prime(ell)) throw DomainError("jacobi_fermat_numerator: ell must be an odd prime");
  if (!is_prime(p)) throw DomainError("jacobi_fermat_numerator: p must be prime");
  if (p % ell != 1) throw DomainError("jacobi_fermat_numerator: need p = 1 mod ell");
  using Cx = std::complex<long double>;
  const long double tau = 2 * std::acos(-1.0L);
  // chi(-1) = zeta_ell^{(p-1)/2}
  const std::uint64_t minus_one_exp = ((p - 1) / 2) % ell;
  std::vector<Cx> poly{1};
  for (std::uint64_t a = 1; a < ell; ++a) {
    for (std::uint64_t b = 1; b < ell; ++b) {
      if ((a + b) % ell == 0) continue;
      const Cx sign = std::polar(1.0L, tau * static_cast<long double>(((a + b) * minus_one_exp) % ell) / static_cast<long double>(ell));
      const Cx alpha = sign * jacobi_sum(ell, p, a, b);
      // factor 1 - (-alpha) t: the inverse roots of this model are -alpha
      std::vector<Cx> next(poly.size() + 1, 0);
      for (std::size_t i = 0; i < poly.size(); ++i) {
        next[i] += poly[i];
        next[i + 1] += alpha * poly[i];
      }
      poly = std::move(next);
    }
  }
  double worst = 0;
  std::vector<BigInt> c;
  for (const auto& z : poly) {
    const long double r = std::round(z.real());
    worst = std::max(worst, static_cast<double>(std::abs(z - Cx(r, 0))));
    c.push_back(BigInt(static_cast<long long>(r)));
  }
  if (worst > 1e-6) throw PrecisionError("jacobi_fermat_numerator: rounding residual " + std::to_string(worst));
  if (rounding_residual) *rounding_residual = worst;
  const int g = static_cast<int>((ell - 1) * (ell - 2) / 2);
  auto out = make_numerator(std::move(c), p, g);
  out.functional_equation = satisfies_functional_equation(out);
  return out;
}

/// Point counts of a curve, its numerator, and the over-determination check.
struct CurveAnalysis {
  std::vector<std::uint64_t> counts;
  ZetaNumerator numerator;
  /// Fresh counts N_{2g+1}, N_{2g+2} against the numerator's predictions.
  std::vector<std::uint64_t> extra_counts;
  std::vector<BigInt> extra_predicted;
  bool overdetermined_ok = true;
};

/// Counts N_1..N_{2g} (and `extra` more for the over-determination check), builds L and validates it.
inline CurveAnalysis analyze_curve(const CurveSpec& c, int g, int extra = 0, double weil_tol = 1e-9,
                                   const CountOptions& opt = {}) {
  if (g < 0) throw DomainError("analyze_curve: genus must be nonnegative");
  CurveAnalysis out;
  for (int m = 1; m <= 2 * g; ++m) out.counts.push_back(count_points(c, static_cast<unsigned>(m), opt));
  out.numerator = weil_validate(numerator_from_counts(out.counts, c.q(), g), weil_tol);
  if (extra > 0) {
    const auto pred = predict_counts(out.numerator, 2 * g + extra);
    for (int m = 2 * g + 1; m <= 2 * g + extra; ++m) {
      out.extra_counts.push_back(count_points(c, static_cast<unsigned>(m), opt));
      out.extra_predicted.push_back(pred[static_cast<std::size_t>(m - 1)]);
      if (BigInt(out.extra_counts.back()) != out.extra_predicted.back()) out.overdetermined_ok = false;
    }
  }
  return out;
}

}  // namespace regprod

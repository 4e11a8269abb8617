#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "regprod/core/arith.hpp"
#include "regprod/core/errors.hpp"
#include "regprod/funcfield/finite_field.hpp"

namespace regprod {

/// Polynomial in x, y, z with coefficients in F_p (stored reduced in [0, p)).
struct FieldPolynomial {
  struct Term {
    std::uint32_t coef = 0;
    std::array<int, 3> exps{0, 0, 0};
  };
  std::uint32_t p = 2;
  std::vector<Term> terms;

  bool is_zero() const { return terms.empty(); }
  int total_degree() const {
    int d = -1;
    for (const auto& t : terms) d = std::max(d, t.exps[0] + t.exps[1] + t.exps[2]);
    return d;
  }
  bool homogeneous() const {
    for (const auto& t : terms)
      if (t.exps[0] + t.exps[1] + t.exps[2] != total_degree()) return false;
    return true;
  }
  /// Coefficient of x^e (univariate use).
  std::uint32_t coefficient_x(int e) const {
    for (const auto& t : terms)
      if (t.exps[0] == e && t.exps[1] == 0 && t.exps[2] == 0) return t.coef;
    return 0;
  }

  std::string to_string() const {
    if (terms.empty()) return "0";
    static const char* names = "xyz";
    std::string s;
    for (const auto& t : terms) {
      if (!s.empty()) s += "+";
      std::string mono;
      for (int v = 0; v < 3; ++v) {
        if (t.exps[static_cast<std::size_t>(v)] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += names[v];
        if (t.exps[static_cast<std::size_t>(v)] > 1) mono += "^" + std::to_string(t.exps[static_cast<std::size_t>(v)]);
      }
      if (mono.empty()) {
        s += std::to_string(t.coef);
      } else {
        s += (t.coef == 1 ? "" : std::to_string(t.coef) + "*") + mono;
      }
    }
    return s;
  }
};

namespace detail {

class PolyParser {
 public:
  PolyParser(const std::string& src, std::uint32_t p, const std::string& vars) : src_(src), p_(p), vars_(vars) {}

  FieldPolynomial parse() {
    std::map<std::array<int, 3>, long long> acc;
    skip();
    if (pos_ >= src_.size()) fail("empty polynomial");
    bool first = true;
    while (pos_ < src_.size()) {
      long long sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      auto [coef, exps] = term();
      auto& slot = acc[exps];
      slot = ((slot + sign * coef) % static_cast<long long>(p_) + p_) % p_;
    }
    FieldPolynomial out;
    out.p = p_;
    for (const auto& [e, c] : acc)
      if (c != 0) out.terms.push_back({static_cast<std::uint32_t>(c), e});
    // graded lex order for display
    std::sort(out.terms.begin(), out.terms.end(), [](const auto& a, const auto& b) {
      const int da = a.exps[0] + a.exps[1] + a.exps[2];
      const int db = b.exps[0] + b.exps[1] + b.exps[2];
      return da != db ? da > db : a.exps > b.exps;
    });
    return out;
  }

 private:
  char peek() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }
  void skip() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw DomainError("polynomial '" + src_ + "': " + msg + " at offset " + std::to_string(pos_));
  }

  long long integer() {
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected integer");
    long long v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      v = (v * 10 + (peek() - '0')) % static_cast<long long>(p_);
      ++pos_;
    }
    skip();
    return v;
  }

  int exponent() {
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected exponent");
    int v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + (peek() - '0');
      if (v > 64) fail("exponent too large");
      ++pos_;
    }
    skip();
    return v;
  }

  std::pair<long long, std::array<int, 3>> term() {
    long long coef = 1;
    std::array<int, 3> exps{0, 0, 0};
    bool need = true;
    while (need) {
      const char c = peek();
      if (std::isdigit(static_cast<unsigned char>(c))) {
        coef = coef * integer() % static_cast<long long>(p_);
      } else if (std::isalpha(static_cast<unsigned char>(c))) {
        const auto v = vars_.find(c);
        if (v == std::string::npos) fail(std::string("unknown variable '") + c + "'");
        ++pos_;
        skip();
        int e = 1;
        if (peek() == '^') {
          ++pos_;
          skip();
          e = exponent();
        }
        exps[v] += e;
      } else {
        fail("expected coefficient or variable");
      }
      // juxtaposition like 2x is accepted; '*' continues the term
      if (peek() == '*') {
        ++pos_;
        skip();
        need = true;
      } else {
        need = std::isalpha(static_cast<unsigned char>(peek())) != 0;
      }
    }
    return {coef, exps};
  }

  const std::string& src_;
  std::uint32_t p_;
  std::string vars_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses term (('+'|'-') term)*; a term is a product of integers and variables
/// with optional '^' exponents. Coefficients are reduced mod p.
inline FieldPolynomial parse_polynomial(const std::string& source, std::uint32_t p, const std::string& variables) {
  if (!is_prime(p)) throw DomainError("parse_polynomial: " + std::to_string(p) + " is not prime");
  return detail::PolyParser(source, p, variables).parse();
}

enum class CurveKind { plane, artin_schreier };

/// A curve over F_q, q = p^k, with equation coefficients in F_p.
struct CurveSpec {
  static constexpr int kMaxDegree = 8;

  CurveKind kind = CurveKind::plane;
  std::uint32_t p = 2;
  unsigned k = 1;
  /// Plane: homogeneous F(x, y, z).
  FieldPolynomial plane;
  /// Artin-Schreier: y^2 + h(x) y = f(x).
  FieldPolynomial h;
  FieldPolynomial f;
  int degree = 0;
  bool homogeneous = true;
  /// Points at infinity per extension degree: empty = default rule, one entry = constant.
  std::vector<long long> infinity;

  std::uint64_t q() const {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < k; ++i) r *= p;
    return r;
  }

  /// (d-1)(d-2)/2 for smooth plane curves; ceil(deg f / 2) - 1 for y^2 + h y = f.
  int default_genus() const {
    if (kind == CurveKind::plane) return (degree - 1) * (degree - 2) / 2;
    return (f.total_degree() + 1) / 2 - 1;
  }

  std::string describe() const {
    if (kind == CurveKind::plane) return plane.to_string() + " = 0";
    return "y^2 + (" + h.to_string() + ")*y = " + f.to_string();
  }
};

/// q = p^k with p prime, k >= 1.
inline std::pair<std::uint32_t, unsigned> split_prime_power(std::uint64_t q) {
  if (q < 2) throw DomainError("q must be a prime power >= 2");
  const auto fac = factorize(q);
  if (fac.size() != 1) throw DomainError(std::to_string(q) + " is not a prime power");
  const auto& [prime, exp] = *fac.begin();
  return {static_cast<std::uint32_t>(prime), exp};
}

/// Plane projective curve from a homogeneous polynomial, over F_p.
inline CurveSpec parse_curve(const std::string& source, std::uint32_t p) {
  CurveSpec c;
  c.kind = CurveKind::plane;
  c.p = p;
  c.plane = parse_polynomial(source, p, "xyz");
  if (c.plane.is_zero()) throw DomainError("parse_curve: zero polynomial");
  c.degree = c.plane.total_degree();
  c.homogeneous = c.plane.homogeneous();
  if (!c.homogeneous) throw DomainError("parse_curve: '" + source + "' is not homogeneous");
  if (c.degree < 1 || c.degree > CurveSpec::kMaxDegree) throw DomainError("parse_curve: degree must be in [1, 8]");
  return c;
}

inline CurveSpec plane_curve(const std::string& source, std::uint64_t q) {
  const auto [p, k] = split_prime_power(q);
  auto c = parse_curve(source, p);
  c.k = k;
  return c;
}

/// y^2 + h(x) y = f(x) over F_q. In characteristic 2, h must be nonzero.
inline CurveSpec artin_schreier_curve(const std::string& h, const std::string& f, std::uint64_t q,
                                      std::vector<long long> infinity = {}) {
  const auto [p, k] = split_prime_power(q);
  CurveSpec c;
  c.kind = CurveKind::artin_schreier;
  c.p = p;
  c.k = k;
  c.h = parse_polynomial(h, p, "x");
  c.f = parse_polynomial(f, p, "x");
  if (c.f.is_zero()) throw DomainError("artin_schreier_curve: f is zero");
  if (p == 2 && c.h.is_zero()) throw DomainError("artin_schreier_curve: h = 0 in characteristic 2 is inseparable");
  c.degree = c.f.total_degree();
  if (c.degree < 1 || c.degree > CurveSpec::kMaxDegree || c.h.total_degree() > CurveSpec::kMaxDegree)
    throw DomainError("artin_schreier_curve: degrees must be at most 8");
  for (auto v : infinity)
    if (v < 0) throw DomainError("artin_schreier_curve: negative point count at infinity");
  if (infinity.empty() && 2 * c.h.total_degree() > c.degree)
    throw DomainError("artin_schreier_curve: deg h > deg f / 2 needs an explicit points-at-infinity rule");
  c.infinity = std::move(infinity);
  return c;
}

namespace detail {

// Value of a polynomial at (x, y, z), each given by discrete log (-1 for zero).
struct CompiledPoly {
  struct T {
    std::uint32_t coef_log;
    std::array<int, 3> exps;
  };
  std::vector<T> terms;

  CompiledPoly(const FieldPolynomial& poly, const FiniteField& F) {
    for (const auto& t : poly.terms) terms.push_back({F.log(F.from_int(t.coef)), t.exps});
  }

  FiniteField::Elem eval(const FiniteField& F, const std::array<std::int64_t, 3>& logs) const {
    const std::uint64_t ord = F.size() - 1;
    FiniteField::Elem acc = 0;
    for (const auto& t : terms) {
      std::uint64_t l = t.coef_log;
      bool zero = false;
      for (int v = 0; v < 3; ++v) {
        const int e = t.exps[static_cast<std::size_t>(v)];
        if (e == 0) continue;
        if (logs[static_cast<std::size_t>(v)] < 0) {
          zero = true;
          break;
        }
        l += static_cast<std::uint64_t>(logs[static_cast<std::size_t>(v)]) * static_cast<std::uint64_t>(e);
      }
      if (!zero) acc = F.add(acc, F.exp(l % ord));
    }
    return acc;
  }
};

inline std::int64_t log_or_neg(const FiniteField& F, FiniteField::Elem a) {
  return a == 0 ? -1 : static_cast<std::int64_t>(F.log(a));
}

template <class Fn>
std::uint64_t parallel_count(std::uint64_t n, unsigned threads, Fn&& count_slice) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(1, n)));
  std::vector<std::uint64_t> partial(threads, 0);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    const std::uint64_t lo = n * t / threads;
    const std::uint64_t hi = n * (t + 1) / threads;
    pool.emplace_back([&, lo, hi, t] { partial[t] = count_slice(lo, hi); });
  }
  for (auto& th : pool) th.join();
  std::uint64_t total = 0;
  for (auto v : partial) total += v;
  return total;
}

}  // namespace detail

struct CountOptions {
  /// Which irreducible modulus builds F_{q^m}.
  unsigned modulus_choice = 0;
  /// 0 = hardware concurrency.
  unsigned threads = 0;
  /// Enumeration budget in cells (q^{2m}).
  std::uint64_t budget = 1000000000ull;
};

/// Points at infinity on the smooth model of y^2 + h y = f over F_{q^m}, default rule.
inline std::uint64_t artin_schreier_infinity(const CurveSpec& c, const FiniteField& F, unsigned m) {
  if (!c.infinity.empty()) {
    if (c.infinity.size() == 1) return static_cast<std::uint64_t>(c.infinity[0]);
    if (m > c.infinity.size())
      throw DomainError("points-at-infinity rule has no entry for extension degree " + std::to_string(m));
    return static_cast<std::uint64_t>(c.infinity[m - 1]);
  }
  const int d = c.f.total_degree();
  if (d % 2 == 1) return 1;
  // Y^2 + h_{d/2} Y = f_d
  const auto b = F.from_int(c.h.coefficient_x(d / 2));
  const auto a = F.from_int(c.f.coefficient_x(d));
  std::uint64_t n = 0;
  for (FiniteField::Elem y = 0; y < F.size(); ++y)
    if (F.add(F.mul(y, y), F.mul(b, y)) == a) ++n;
  return n;
}

/// Number of F_{q^m}-rational points, by exhaustive enumeration.
inline std::uint64_t count_points(const CurveSpec& c, unsigned m, const CountOptions& opt = {}) {
  if (m < 1) throw DomainError("count_points: m must be positive");
  std::uint64_t Q = 1;
  for (unsigned i = 0; i < c.k * m; ++i) {
    Q *= c.p;
    if (Q > FiniteField::kMaxSize) throw DomainError("count_points: enumeration budget exceeded");
  }
  if (Q * Q > opt.budget)
    throw DomainError("count_points: q^{2m} = " + std::to_string(Q * Q) + " exceeds the enumeration budget");
  const FiniteField F(c.p, c.k * m, opt.modulus_choice);
  using E = FiniteField::Elem;

  if (c.kind == CurveKind::plane) {
    const detail::CompiledPoly poly(c.plane, F);
    // [x:y:1] for all x, y
    auto affine = detail::parallel_count(Q, opt.threads, [&](std::uint64_t lo, std::uint64_t hi) {
      std::uint64_t n = 0;
      for (std::uint64_t x = lo; x < hi; ++x) {
        const auto lx = detail::log_or_neg(F, static_cast<E>(x));
        for (E y = 0; y < Q; ++y)
          if (poly.eval(F, {lx, detail::log_or_neg(F, y), 0}) == 0) ++n;
      }
      return n;
    });
    std::uint64_t n = affine;
    for (E x = 0; x < Q; ++x)
      if (poly.eval(F, {detail::log_or_neg(F, x), 0, -1}) == 0) ++n;
    if (poly.eval(F, {0, -1, -1}) == 0) ++n;
    return n;
  }

  const detail::CompiledPoly h(c.h, F);
  const detail::CompiledPoly f(c.f, F);
  auto affine = detail::parallel_count(Q, opt.threads, [&](std::uint64_t lo, std::uint64_t hi) {
    std::uint64_t n = 0;
    for (std::uint64_t x = lo; x < hi; ++x) {
      const std::array<std::int64_t, 3> lx{detail::log_or_neg(F, static_cast<E>(x)), -1, -1};
      const E hx = h.eval(F, lx);
      const E fx = f.eval(F, lx);
      for (E y = 0; y < Q; ++y)
        if (F.add(F.mul(y, y), F.mul(hx, y)) == fx) ++n;
    }
    return n;
  });
  return affine + artin_schreier_infinity(c, F, m);
}

}  // namespace regprod

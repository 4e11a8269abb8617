#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "regprod/core/arith.hpp"
#include "regprod/core/errors.hpp"

namespace regprod {

/// GF(p^n) with elements encoded as integers sum c_i p^i (c_i the coefficients
/// of the residue polynomial). Multiplication through log tables, addition
/// through XOR (p = 2) or Zech logarithms.
class FiniteField {
 public:
  using Elem = std::uint32_t;
  static constexpr std::uint64_t kMaxSize = 1u << 22;

  /// The modulus is the `modulus_choice`-th monic irreducible of degree n in
  /// lexicographic order of its lower coefficients.
  FiniteField(std::uint32_t p, unsigned n, unsigned modulus_choice = 0) : p_(p), n_(n) {
    if (!is_prime(p)) throw DomainError("FiniteField: characteristic " + std::to_string(p) + " is not prime");
    if (n < 1) throw DomainError("FiniteField: degree must be positive");
    std::uint64_t size = 1;
    for (unsigned i = 0; i < n; ++i) {
      size *= p;
      if (size > kMaxSize) throw DomainError("FiniteField: field too large for table arithmetic");
    }
    size_ = static_cast<Elem>(size);
    modulus_ = find_irreducible(modulus_choice);
    build_tables();
  }

  FiniteField(std::uint32_t p, std::vector<std::uint32_t> modulus) : p_(p) {
    if (!is_prime(p)) throw DomainError("FiniteField: characteristic " + std::to_string(p) + " is not prime");
    if (modulus.size() < 2 || modulus.back() != 1) throw DomainError("FiniteField: modulus must be monic of degree >= 1");
    n_ = static_cast<unsigned>(modulus.size() - 1);
    std::uint64_t size = 1;
    for (unsigned i = 0; i < n_; ++i) {
      size *= p;
      if (size > kMaxSize) throw DomainError("FiniteField: field too large for table arithmetic");
    }
    size_ = static_cast<Elem>(size);
    for (auto c : modulus)
      if (c >= p) throw DomainError("FiniteField: modulus coefficient out of range");
    if (!irreducible(modulus)) throw DomainError("FiniteField: modulus is reducible");
    modulus_ = std::move(modulus);
    build_tables();
  }

  std::uint32_t characteristic() const { return p_; }
  unsigned degree() const { return n_; }
  Elem size() const { return size_; }
  /// Monic, coefficients low to high.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  Elem generator() const { return exp_[1 % (size_ - 1)]; }

  /// Number of monic irreducibles of degree n over F_p, by Gauss's formula.
  static std::uint64_t irreducible_count(std::uint32_t p, unsigned n) {
    std::int64_t acc = 0;
    for (auto d : divisors(n)) {
      std::int64_t pw = 1;
      for (std::uint64_t i = 0; i < n / d; ++i) pw *= p;
      acc += mobius(d) * pw;
    }
    return static_cast<std::uint64_t>(acc) / n;
  }

  Elem from_int(long long c) const {
    const long long r = ((c % static_cast<long long>(p_)) + p_) % p_;
    return static_cast<Elem>(r);
  }

  Elem add(Elem a, Elem b) const {
    if (a == 0) return b;
    if (b == 0) return a;
    if (p_ == 2) return a ^ b;
    const std::uint32_t la = log_[a];
    std::uint32_t d = log_[b] + (size_ - 1) - la;
    if (d >= size_ - 1) d -= size_ - 1;
    const std::int64_t z = zech_[d];
    if (z < 0) return 0;
    return exp_[(la + static_cast<std::uint32_t>(z)) % (size_ - 1)];
  }

  Elem neg(Elem a) const {
    if (a == 0 || p_ == 2) return a;
    return exp_[(log_[a] + (size_ - 1) / 2) % (size_ - 1)];
  }

  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }

  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[(log_[a] + log_[b]) % (size_ - 1)];
  }

  Elem inv(Elem a) const {
    if (a == 0) throw DomainError("FiniteField: inverse of zero");
    return exp_[(size_ - 1 - log_[a]) % (size_ - 1)];
  }

  Elem pow(Elem a, std::uint64_t e) const {
    if (e == 0) return 1;
    if (a == 0) return 0;
    return exp_[static_cast<std::uint32_t>((static_cast<std::uint64_t>(log_[a]) * (e % (size_ - 1))) % (size_ - 1))];
  }

  /// Discrete log to base generator(); a must be nonzero.
  std::uint32_t log(Elem a) const {
    if (a == 0) throw DomainError("FiniteField: log of zero");
    return log_[a];
  }
  Elem exp(std::uint64_t k) const { return exp_[k % (size_ - 1)]; }

  bool is_square(Elem a) const { return a == 0 || p_ == 2 || log_[a] % 2 == 0; }

  /// Product by schoolbook polynomial multiplication mod the modulus; independent of the tables.
  Elem mul_reference(Elem a, Elem b) const { return encode(polymulmod(decode(a), decode(b))); }
  /// Sum by coefficientwise addition; independent of the tables.
  Elem add_reference(Elem a, Elem b) const {
    auto x = decode(a);
    auto y = decode(b);
    for (unsigned i = 0; i < n_; ++i) x[i] = (x[i] + y[i]) % p_;
    return encode(x);
  }

  std::string modulus_string() const {
    std::string s;
    for (int i = static_cast<int>(n_); i >= 0; --i) {
      const auto c = modulus_[static_cast<std::size_t>(i)];
      if (c == 0) continue;
      if (!s.empty()) s += "+";
      if (c != 1 || i == 0) s += std::to_string(c);
      if (i > 0) s += (c != 1 ? "*x" : "x") + (i > 1 ? "^" + std::to_string(i) : std::string());
    }
    return s;
  }

 private:
  using Poly = std::vector<std::uint32_t>;

  Poly decode(Elem a) const {
    Poly c(n_);
    for (unsigned i = 0; i < n_; ++i) {
      c[i] = a % p_;
      a /= p_;
    }
    return c;
  }

  Elem encode(const Poly& c) const {
    Elem a = 0;
    for (int i = static_cast<int>(n_) - 1; i >= 0; --i) a = a * p_ + c[static_cast<std::size_t>(i)];
    return a;
  }

  Poly polymulmod(const Poly& a, const Poly& b) const {
    Poly prod(2 * n_, 0);
    for (unsigned i = 0; i < n_; ++i) {
      if (a[i] == 0) continue;
      for (unsigned j = 0; j < n_; ++j)
        prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p_);
    }
    for (int d = static_cast<int>(2 * n_) - 1; d >= static_cast<int>(n_); --d) {
      const std::uint32_t c = prod[static_cast<std::size_t>(d)];
      if (c == 0) continue;
      for (unsigned i = 0; i <= n_; ++i) {
        auto& slot = prod[static_cast<std::size_t>(d) - n_ + i];
        slot = static_cast<std::uint32_t>((slot + static_cast<std::uint64_t>(p_ - c) * modulus_[i]) % p_);
      }
    }
    prod.resize(n_);
    return prod;
  }

  // Remainder of f modulo a monic g, over F_p.
  Poly polyrem(Poly f, const Poly& g) const {
    const std::size_t dg = g.size() - 1;
    for (std::size_t d = f.size(); d-- > dg;) {
      const std::uint32_t c = f[d];
      if (c == 0) continue;
      for (std::size_t i = 0; i <= dg; ++i) {
        auto& slot = f[d - dg + i];
        slot = static_cast<std::uint32_t>((slot + static_cast<std::uint64_t>(p_ - c) * g[i]) % p_);
      }
    }
    f.resize(dg);
    return f;
  }

  // Trial division by every monic polynomial of degree <= n/2.
  bool irreducible(const Poly& f) const {
    const std::size_t n = f.size() - 1;
    for (std::size_t d = 1; 2 * d <= n; ++d) {
      std::uint64_t count = 1;
      for (std::size_t i = 0; i < d; ++i) count *= p_;
      for (std::uint64_t code = 0; code < count; ++code) {
        Poly g(d + 1);
        std::uint64_t c = code;
        for (std::size_t i = 0; i < d; ++i) {
          g[i] = static_cast<std::uint32_t>(c % p_);
          c /= p_;
        }
        g[d] = 1;
        const auto r = polyrem(f, g);
        bool zero = true;
        for (auto x : r) zero = zero && x == 0;
        if (zero) return false;
      }
    }
    return true;
  }

  Poly find_irreducible(unsigned choice) const {
    unsigned seen = 0;
    for (Elem code = 0; code < size_; ++code) {
      Poly f = decode(code);
      f.push_back(1);
      if (!irreducible(f)) continue;
      if (seen++ == choice) return f;
    }
    throw DomainError("FiniteField: only " + std::to_string(seen) + " irreducible moduli of degree " +
                      std::to_string(n_) + " over F_" + std::to_string(p_));
  }

  void build_tables() {
    const Elem order = size_ - 1;
    exp_.assign(order == 0 ? 1 : order, 1);
    log_.assign(size_, 0);
    bool found = false;
    for (Elem g = 1; g < size_ && !found; ++g) {
      const auto gp = decode(g);
      auto cur = decode(1);
      Elem k = 0;
      bool ok = true;
      for (; k < order; ++k) {
        const Elem e = encode(cur);
        if (k > 0 && e == 1) {
          ok = false;
          break;
        }
        exp_[k] = e;
        cur = polymulmod(cur, gp);
      }
      found = ok && encode(cur) == 1;
    }
    if (!found) throw DomainError("FiniteField: no primitive element found");
    for (Elem k = 0; k < order; ++k) log_[exp_[k]] = k;
    zech_.assign(order == 0 ? 1 : order, -1);
    for (Elem k = 0; k < order; ++k) {
      const Elem s = add_reference(1, exp_[k]);
      zech_[k] = s == 0 ? -1 : static_cast<std::int64_t>(log_[s]);
    }
  }

  std::uint32_t p_;
  unsigned n_ = 1;
  Elem size_ = 0;
  Poly modulus_;
  std::vector<Elem> exp_;
  std::vector<std::uint32_t> log_;
  std::vector<std::int64_t> zech_;
};

}  // namespace regprod

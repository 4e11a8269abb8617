#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <string>
#include <vector>

#include "regprod/core/arith.hpp"
#include "regprod/core/bigrational.hpp"
#include "regprod/core/complex.hpp"
#include "regprod/core/errors.hpp"

namespace regprod {

/// Exact element sum_k c_k zeta_n^k of Q(zeta_n), kept unreduced.
struct RootSum {
  std::uint64_t n = 1;
  std::vector<BigRational> coeffs;  // indexed by root exponent mod n

  RootSum() : coeffs(1) {}
  explicit RootSum(std::uint64_t order) : n(order), coeffs(order) {}

  void add(std::uint64_t k, const BigRational& c) { coeffs[k % n] += c; }

  RootSum& operator*=(const BigRational& c) {
    for (auto& x : coeffs) x *= c;
    return *this;
  }

  /// Value when only +1 and -1 occur (real characters); nullopt-like flag otherwise.
  bool is_rational() const {
    for (std::uint64_t k = 0; k < n; ++k)
      if (coeffs[k] != 0 && k != 0 && 2 * k != n) return false;
    return true;
  }

  BigRational rational_value() const {
    if (!is_rational()) throw DomainError("RootSum: value is not rational");
    BigRational v = coeffs[0];
    if (n % 2 == 0) v -= coeffs[n / 2];
    return v;
  }

  template <class Real>
  Complex<Real> to_complex() const {
    Complex<Real> acc;
    for (std::uint64_t k = 0; k < n; ++k) {
      if (coeffs[k] == 0) continue;
      acc += root_of_unity<Real>(static_cast<long long>(k), static_cast<long long>(n)) *
             Complex<Real>(to_real<Real>(coeffs[k]));
    }
    return acc;
  }
};

/// Structure of (Z/m)^x as a product of cyclic factors with fixed generators.
class CharacterGroup {
 public:
  struct Factor {
    std::uint64_t prime_power;
    std::uint64_t generator;  // generator lifted to Z/m (1 at the other prime powers)
    std::uint64_t order;
  };

  explicit CharacterGroup(std::uint64_t m) : m_(m) {
    if (m == 0) throw DomainError("CharacterGroup: modulus must be positive");
    phi_ = euler_phi(m);
    for (const auto& [p, k] : factorize(m)) {
      std::uint64_t pk = 1;
      for (unsigned i = 0; i < k; ++i) pk *= p;
      auto add = [&](std::uint64_t g_local, std::uint64_t order) {
        factors_.push_back({pk, crt_lift(g_local, pk), order});
      };
      if (p == 2) {
        if (k == 2) add(3, 2);
        if (k >= 3) {
          add(pk - 1, 2);
          add(5, pk / 4);
        }
      } else {
        add(primitive_root_prime_power(p, k), pk / p * (p - 1));
      }
    }
    build_logs();
  }

  std::uint64_t modulus() const { return m_; }
  std::uint64_t phi() const { return phi_; }
  const std::vector<Factor>& factors() const { return factors_; }

  /// Exponents of a on the generators; empty for non-units.
  const std::vector<std::uint64_t>& discrete_log(std::uint64_t a) const { return logs_[a % m_]; }

 private:
  std::uint64_t crt_lift(std::uint64_t g, std::uint64_t pk) const {
    const std::uint64_t rest = m_ / pk;
    if (rest == 1) return g % m_;
    // x = g mod pk, x = 1 mod rest
    const std::uint64_t inv = invmod(rest % pk, pk);
    const std::uint64_t t = mulmod((g + pk - 1) % pk, inv, pk);
    return (1 + static_cast<unsigned __int128>(rest) * t) % m_;
  }

  void build_logs() {
    logs_.assign(m_, {});
    std::vector<std::uint64_t> e(factors_.size(), 0);
    const std::size_t nf = factors_.size();
    if (m_ == 1) return;
    for (std::uint64_t count = 0; count < phi_; ++count) {
      std::uint64_t a = 1 % m_;
      for (std::size_t j = 0; j < nf; ++j) a = mulmod(a, powmod(factors_[j].generator, e[j], m_), m_);
      logs_[a] = e;
      if (nf == 0) break;
      for (std::size_t j = nf; j-- > 0;) {
        if (++e[j] < factors_[j].order) break;
        e[j] = 0;
      }
    }
  }

  std::uint64_t m_;
  std::uint64_t phi_ = 1;
  std::vector<Factor> factors_;
  std::vector<std::vector<std::uint64_t>> logs_;
};

/// Shared, lazily built group for modulus m.
inline std::shared_ptr<const CharacterGroup> character_group(std::uint64_t m) {
  static std::mutex mutex;
  static std::map<std::uint64_t, std::shared_ptr<const CharacterGroup>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[m];
  if (!slot) slot = std::make_shared<const CharacterGroup>(m);
  return slot;
}

/// Dirichlet character mod m. Values on units are phi(m)-th roots of unity,
/// stored as exponents; non-units carry index -1.
class DirichletCharacter {
 public:
  DirichletCharacter(std::shared_ptr<const CharacterGroup> group, std::vector<std::uint64_t> exponents)
      : group_(std::move(group)), exponents_(std::move(exponents)) {
    const auto& f = group_->factors();
    if (exponents_.size() != f.size()) throw DomainError("DirichletCharacter: exponent vector has wrong length");
    const std::uint64_t n = group_->phi();
    table_.assign(group_->modulus(), -1);
    for (std::uint64_t a = 0; a < group_->modulus(); ++a) {
      if (std::gcd(a, group_->modulus()) != 1) continue;
      const auto& lg = group_->discrete_log(a);
      std::uint64_t idx = 0;
      for (std::size_t j = 0; j < f.size(); ++j) {
        exponents_[j] %= f[j].order;
        idx = (idx + static_cast<unsigned __int128>(exponents_[j]) * lg[j] % f[j].order * (n / f[j].order)) % n;
      }
      table_[a] = static_cast<std::int64_t>(idx);
    }
  }

  std::uint64_t modulus() const { return group_->modulus(); }
  /// Values are powers of e^{2 pi i / root_order()}.
  std::uint64_t root_order() const { return group_->phi(); }
  const std::vector<std::uint64_t>& exponents() const { return exponents_; }
  const CharacterGroup& group() const { return *group_; }

  /// Root index of chi(a), or -1 when gcd(a, m) > 1.
  std::int64_t index(std::int64_t a) const {
    const auto m = static_cast<std::int64_t>(modulus());
    std::int64_t r = a % m;
    if (r < 0) r += m;
    return table_[static_cast<std::size_t>(r)];
  }

  template <class Real>
  Complex<Real> value(std::int64_t a) const {
    const auto i = index(a);
    if (i < 0) return Complex<Real>();
    return root_of_unity<Real>(i, static_cast<long long>(root_order()));
  }

  bool is_principal() const {
    for (auto e : exponents_)
      if (e != 0) return false;
    return true;
  }

  /// chi(-1) in {+1, -1}.
  int parity() const { return index(-1) == 0 ? 1 : -1; }
  bool is_even() const { return parity() == 1; }

  bool is_real() const {
    for (auto i : table_)
      if (i > 0 && 2 * static_cast<std::uint64_t>(i) != root_order()) return false;
    return true;
  }

  /// Multiplicative order of chi in the character group.
  std::uint64_t order() const {
    std::uint64_t g = root_order();
    for (auto i : table_)
      if (i >= 0) g = std::gcd(g, static_cast<std::uint64_t>(i));
    return root_order() / g;
  }

  DirichletCharacter power(std::int64_t k) const {
    std::vector<std::uint64_t> e(exponents_.size());
    const auto& f = group_->factors();
    for (std::size_t j = 0; j < e.size(); ++j) {
      const auto ord = static_cast<std::int64_t>(f[j].order);
      std::int64_t v = static_cast<std::int64_t>((static_cast<__int128>(exponents_[j]) * (k % ord)) % ord);
      if (v < 0) v += ord;
      e[j] = static_cast<std::uint64_t>(v);
    }
    return DirichletCharacter(group_, std::move(e));
  }

  DirichletCharacter inverse() const { return power(-1); }

  friend DirichletCharacter operator*(const DirichletCharacter& a, const DirichletCharacter& b) {
    if (a.modulus() != b.modulus()) throw DomainError("character product: modulus mismatch");
    std::vector<std::uint64_t> e(a.exponents_.size());
    const auto& f = a.group_->factors();
    for (std::size_t j = 0; j < e.size(); ++j) e[j] = (a.exponents_[j] + b.exponents_[j]) % f[j].order;
    return DirichletCharacter(a.group_, std::move(e));
  }

  friend bool operator==(const DirichletCharacter& a, const DirichletCharacter& b) {
    return a.modulus() == b.modulus() && a.exponents_ == b.exponents_;
  }

  std::string label() const {
    std::string s = "chi_" + std::to_string(modulus()) + "[";
    for (std::size_t j = 0; j < exponents_.size(); ++j) {
      if (j) s += ",";
      s += std::to_string(exponents_[j]);
    }
    return s + "]";
  }

 private:
  std::shared_ptr<const CharacterGroup> group_;
  std::vector<std::uint64_t> exponents_;
  std::vector<std::int64_t> table_;
};

inline DirichletCharacter principal_character(std::uint64_t m) {
  auto g = character_group(m);
  return DirichletCharacter(g, std::vector<std::uint64_t>(g->factors().size(), 0));
}

/// All phi(m) characters, principal first, exponent vectors in lexicographic order.
inline std::vector<DirichletCharacter> enumerate_characters(std::uint64_t m) {
  auto g = character_group(m);
  const auto& f = g->factors();
  std::vector<DirichletCharacter> out;
  std::vector<std::uint64_t> e(f.size(), 0);
  for (std::uint64_t count = 0; count < g->phi(); ++count) {
    out.emplace_back(g, e);
    for (std::size_t j = f.size(); j-- > 0;) {
      if (++e[j] < f[j].order) break;
      e[j] = 0;
    }
  }
  return out;
}

/// The character mod `group` modulus whose values are given by root indices
/// (relative to `root_order`) on all units; values are checked.
inline DirichletCharacter character_from_indices(std::uint64_t m, std::uint64_t root_order,
                                                 const std::function<std::int64_t(std::uint64_t)>& idx) {
  auto g = character_group(m);
  const std::uint64_t n = g->phi();
  std::vector<std::uint64_t> e;
  for (const auto& f : g->factors()) {
    // chi(g_j) = zeta_root^i must equal zeta_ord^e
    const auto i = static_cast<std::uint64_t>(idx(f.generator));
    const auto num = static_cast<unsigned __int128>(i) * f.order;
    if (num % root_order != 0) throw DomainError("character_from_indices: values are not a character mod " + std::to_string(m));
    e.push_back(static_cast<std::uint64_t>(num / root_order % f.order));
  }
  DirichletCharacter chi(g, std::move(e));
  for (std::uint64_t a = 1; a < m; ++a) {
    if (std::gcd(a, m) != 1) continue;
    const auto want = static_cast<unsigned __int128>(idx(a)) * n;
    if (want % root_order != 0 || static_cast<std::int64_t>(want / root_order % n) != chi.index(static_cast<std::int64_t>(a)))
      throw DomainError("character_from_indices: values are not multiplicative mod " + std::to_string(m));
  }
  return chi;
}

struct ConductorInfo {
  std::uint64_t conductor;
  DirichletCharacter primitive;
};

/// Smallest f | m such that chi is trivial on units congruent to 1 mod f, and
/// the primitive character mod f inducing chi.
inline ConductorInfo conductor_and_primitive(const DirichletCharacter& chi) {
  const std::uint64_t m = chi.modulus();
  for (std::uint64_t f : divisors(m)) {
    bool ok = true;
    for (std::uint64_t a = 1 % f; a < m && ok; a += f) {
      if (a == 0) continue;
      const auto i = chi.index(static_cast<std::int64_t>(a));
      if (i > 0) ok = false;
    }
    if (!ok) continue;
    auto lift_index = [&](std::uint64_t b) -> std::int64_t {
      for (std::uint64_t a = b % f; a < m * f + f; a += f) {
        if (a == 0) continue;
        if (std::gcd(a, m) == 1) return chi.index(static_cast<std::int64_t>(a));
      }
      throw DomainError("conductor_and_primitive: no unit lift");
    };
    auto prim = character_from_indices(f, chi.root_order(), lift_index);
    return {f, prim};
  }
  throw DomainError("conductor_and_primitive: no conductor found");
}

/// The character mod M (a multiple of chi's modulus) induced by chi.
inline DirichletCharacter induce(const DirichletCharacter& chi, std::uint64_t M) {
  if (M % chi.modulus() != 0) throw DomainError("induce: target modulus must be a multiple");
  return character_from_indices(M, chi.root_order(), [&](std::uint64_t a) { return chi.index(static_cast<std::int64_t>(a)); });
}

struct CharacterSubsets {
  std::vector<std::size_t> plus;   // chi^n even
  std::vector<std::size_t> minus;  // chi^n odd
  std::vector<std::size_t> zero;   // chi^n principal
};

/// Index sets into enumerate_characters(m).
inline CharacterSubsets character_subsets(std::uint64_t m, std::uint64_t n) {
  if (n == 0) throw DomainError("character_subsets: n must be positive");
  CharacterSubsets s;
  const auto chars = enumerate_characters(m);
  for (std::size_t i = 0; i < chars.size(); ++i) {
    const auto p = chars[i].power(static_cast<std::int64_t>(n));
    (p.is_even() ? s.plus : s.minus).push_back(i);
    if (p.is_principal()) s.zero.push_back(i);
  }
  return s;
}

/// B_{n,chi} = m^{n-1} sum_{a=1}^{m} chi(a) B_n(a/m), exact in Q(zeta).
inline RootSum char_bernoulli(unsigned n, const DirichletCharacter& chi);

/// Exact L(0, chi) = -(1/m) sum chi(a) a for non-principal chi; 0 for principal.
inline RootSum l_at_zero_exact(const DirichletCharacter& chi) {
  RootSum r(chi.root_order());
  if (chi.is_principal()) return r;
  const auto m = chi.modulus();
  for (std::uint64_t a = 1; a <= m; ++a) {
    const auto i = chi.index(static_cast<std::int64_t>(a));
    if (i >= 0) r.add(static_cast<std::uint64_t>(i), BigRational(-static_cast<long long>(a), static_cast<long long>(m)));
  }
  return r;
}

}  // namespace regprod

#include "regprod/special/bernoulli.hpp"

namespace regprod {

inline RootSum char_bernoulli(unsigned n, const DirichletCharacter& chi) {
  const auto m = chi.modulus();
  RootSum r(chi.root_order());
  for (std::uint64_t a = 1; a <= m; ++a) {
    const auto i = chi.index(static_cast<std::int64_t>(a));
    if (i < 0) continue;
    r.add(static_cast<std::uint64_t>(i), bernoulli_poly(static_cast<int>(n), BigRational(static_cast<long long>(a), static_cast<long long>(m))));
  }
  BigRational scale = 1;
  if (n == 0) scale = BigRational(1, static_cast<long long>(m));
  for (unsigned k = 1; k < n; ++k) scale *= static_cast<long long>(m);
  r *= scale;
  return r;
}

}  // namespace regprod

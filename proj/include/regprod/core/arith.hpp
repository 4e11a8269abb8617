#pragma once

#include <cstdint>
#include <algorithm>
#include <map>
#include <tuple>
#include <numeric>
#include <vector>

#include "regprod/core/errors.hpp"

namespace regprod {

/// prime -> exponent, keys increasing.
using Factorization = std::map<std::uint64_t, unsigned>;

inline Factorization factorize(std::uint64_t n) {
  Factorization f;
  for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    while (n % p == 0) {
      ++f[p];
      n /= p;
    }
  }
  if (n > 1) ++f[n];
  return f;
}

inline std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (const auto& [p, e] : factorize(n)) out.push_back(p);
  return out;
}

struct MultiplicativeInvariants {
  int mobius = 1;
  std::uint64_t phi = 1;
  unsigned omega = 0;
  Factorization factorization;
};

inline MultiplicativeInvariants multiplicative_invariants(std::int64_t n) {
  if (n <= 0) throw DomainError("multiplicative_invariants: n must be positive");
  MultiplicativeInvariants inv;
  inv.factorization = factorize(static_cast<std::uint64_t>(n));
  inv.omega = static_cast<unsigned>(inv.factorization.size());
  for (const auto& [p, e] : inv.factorization) {
    inv.mobius = (e > 1) ? 0 : -inv.mobius;
    std::uint64_t pk = 1;
    for (unsigned i = 1; i < e; ++i) pk *= p;
    inv.phi *= pk * (p - 1);
  }
  return inv;
}

inline int mobius(std::uint64_t n) { return multiplicative_invariants(static_cast<std::int64_t>(n)).mobius; }
inline std::uint64_t euler_phi(std::uint64_t n) { return multiplicative_invariants(static_cast<std::int64_t>(n)).phi; }

inline bool is_squarefree(std::uint64_t n) { return mobius(n) != 0; }

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

/// Smallest generator of (Z/p^k)^x for an odd prime p.
inline std::uint64_t primitive_root_prime_power(std::uint64_t p, unsigned k) {
  std::uint64_t pk = 1;
  for (unsigned i = 0; i < k; ++i) pk *= p;
  const std::uint64_t phi = pk / p * (p - 1);
  const auto qs = prime_divisors(phi);
  for (std::uint64_t g = 2; g < pk; ++g) {
    if (g % p == 0) continue;
    bool ok = true;
    for (auto q : qs) {
      if (powmod(g, phi / q, pk) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw DomainError("no primitive root");
}

/// Modular inverse of a mod m (gcd(a,m) = 1).
inline std::uint64_t invmod(std::uint64_t a, std::uint64_t m) {
  std::int64_t t = 0, nt = 1;
  std::int64_t r = static_cast<std::int64_t>(m), nr = static_cast<std::int64_t>(a % m);
  while (nr != 0) {
    std::int64_t q = r / nr;
    std::tie(t, nt) = std::make_tuple(nt, t - q * nt);
    std::tie(r, nr) = std::make_tuple(nr, r - q * nr);
  }
  if (r != 1) throw DomainError("invmod: not invertible");
  if (t < 0) t += static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(t);
}

/// Linear sieve for primes <= n.
inline std::vector<std::uint32_t> primes_up_to(std::uint32_t n) {
  std::vector<bool> composite(static_cast<std::size_t>(n) + 1, false);
  std::vector<std::uint32_t> primes;
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (!composite[i]) primes.push_back(static_cast<std::uint32_t>(i));
    for (auto p : primes) {
      if (i * p > n) break;
      composite[i * p] = true;
      if (i % p == 0) break;
    }
  }
  return primes;
}

/// mu(0..n) with mu(0) = 0.
inline std::vector<std::int8_t> mobius_table(std::uint32_t n) {
  std::vector<std::int8_t> mu(static_cast<std::size_t>(n) + 1, 1);
  mu[0] = 0;
  std::vector<bool> composite(static_cast<std::size_t>(n) + 1, false);
  std::vector<std::uint32_t> primes;
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (!composite[i]) {
      primes.push_back(static_cast<std::uint32_t>(i));
      mu[i] = -1;
    }
    for (auto p : primes) {
      if (i * p > n) break;
      composite[i * p] = true;
      if (i % p == 0) {
        mu[i * p] = 0;
        break;
      }
      mu[i * p] = static_cast<std::int8_t>(-mu[i]);
    }
  }
  return mu;
}

inline std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      if (d * d != n) out.push_back(n / d);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace regprod

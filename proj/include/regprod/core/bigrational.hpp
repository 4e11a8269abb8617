#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace regprod {

using BigInt = boost::multiprecision::cpp_int;
/// Always reduced, denominator positive.
using BigRational = boost::multiprecision::cpp_rational;

inline std::string to_string(const BigRational& r) { return r.str(); }

/// "p/q" or "p"; inverse of to_string.
inline BigRational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return BigRational(BigInt(s));
  return BigRational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
}

inline bool is_integer(const BigRational& r) { return denominator(r) == 1; }

template <class Real>
Real to_real(const BigInt& n) {
  if constexpr (std::is_floating_point_v<Real>) {
    return n.template convert_to<Real>();
  } else {
    return Real(n);
  }
}

template <class Real>
Real to_real(const BigRational& r) {
  return to_real<Real>(numerator(r)) / to_real<Real>(denominator(r));
}

}  // namespace regprod

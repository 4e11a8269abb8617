#pragma once

#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <type_traits>

#include <boost/multiprecision/mpfr.hpp>

namespace regprod {

/// Variable-precision MPFR real; precision is a thread-local runtime setting.
using MpfrReal = boost::multiprecision::mpfr_float;

template <class Real>
struct RealTraits {
  static int precision_bits() { return std::numeric_limits<Real>::digits; }
  static Real epsilon() { return std::numeric_limits<Real>::epsilon(); }
};

template <>
struct RealTraits<MpfrReal> {
  static int precision_bits() {
    // digits10 -> bits, rounded the way Boost stores it.
    return static_cast<int>(MpfrReal::default_precision() * 3.3219280948873623) + 1;
  }
  static MpfrReal epsilon() {
    using std::ldexp;
    return ldexp(MpfrReal(1), 1 - precision_bits());
  }
};

/// Sets the MPFR working precision for the current thread and restores it on scope exit.
class MpfrPrecisionScope {
 public:
  explicit MpfrPrecisionScope(int bits) : saved_(MpfrReal::default_precision()) {
    MpfrReal::default_precision(static_cast<unsigned>(bits / 3.3219280948873623) + 1);
  }
  ~MpfrPrecisionScope() { MpfrReal::default_precision(saved_); }
  MpfrPrecisionScope(const MpfrPrecisionScope&) = delete;
  MpfrPrecisionScope& operator=(const MpfrPrecisionScope&) = delete;

 private:
  unsigned saved_;
};

template <class Real>
Real pi() {
  using std::atan;
  return atan(Real(1)) * 4;
}

template <class Real>
double to_double(const Real& x) {
  if constexpr (std::is_floating_point_v<Real>) {
    return static_cast<double>(x);
  } else {
    return x.template convert_to<double>();
  }
}

/// Decimal text with `digits` significant digits.
template <class Real>
std::string format_real(const Real& x, int digits = 20) {
  std::ostringstream os;
  os.precision(digits);
  os << x;
  return os.str();
}

}  // namespace regprod

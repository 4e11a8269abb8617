#pragma once

#include <cmath>
#include <ostream>

#include "regprod/core/real.hpp"

namespace regprod {

/// Minimal complex number over an arbitrary real type (std::complex is only
/// specified for the built-in floating types).
template <class Real>
struct Complex {
  Real re{0};
  Real im{0};

  Complex() = default;
  Complex(Real r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  Complex(int r) : re(r) {}  // NOLINT(google-explicit-constructor)

  Complex& operator+=(const Complex& o) { re += o.re; im += o.im; return *this; }
  Complex& operator-=(const Complex& o) { re -= o.re; im -= o.im; return *this; }
  Complex& operator*=(const Complex& o) {
    Real r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = r;
    return *this;
  }
  Complex& operator/=(const Complex& o) {
    Real d = o.re * o.re + o.im * o.im;
    Real r = (re * o.re + im * o.im) / d;
    im = (im * o.re - re * o.im) / d;
    re = r;
    return *this;
  }

  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
  friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
  friend Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
  friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(const Complex& a, const Complex& b) { return !(a == b); }

  friend std::ostream& operator<<(std::ostream& os, const Complex& z) {
    return os << '(' << z.re << ',' << z.im << ')';
  }
};

template <class Real>
Complex<Real> conj(const Complex<Real>& z) { return {z.re, -z.im}; }

template <class Real>
Real norm(const Complex<Real>& z) { return z.re * z.re + z.im * z.im; }

template <class Real>
Real abs(const Complex<Real>& z) {
  using std::hypot;
  return hypot(z.re, z.im);
}

template <class Real>
Real arg(const Complex<Real>& z) {
  using std::atan2;
  return atan2(z.im, z.re);
}

template <class Real>
Complex<Real> polar(const Real& r, const Real& theta) {
  using std::cos;
  using std::sin;
  return {r * cos(theta), r * sin(theta)};
}

template <class Real>
Complex<Real> exp(const Complex<Real>& z) {
  using std::exp;
  return polar(Real(exp(z.re)), z.im);
}

/// Principal branch.
template <class Real>
Complex<Real> log(const Complex<Real>& z) {
  using std::log;
  return {Real(log(abs(z))), arg(z)};
}

/// e^{2 pi i k / n}; exact 1 for k == 0 so that exact-zero tests on 1 - z work.
template <class Real>
Complex<Real> root_of_unity(long long k, long long n) {
  k %= n;
  if (k < 0) k += n;
  if (k == 0) return Complex<Real>(Real(1));
  if (2 * k == n) return Complex<Real>(Real(-1));
  if (4 * k == n) return Complex<Real>(Real(0), Real(1));
  if (4 * k == 3 * n) return Complex<Real>(Real(0), Real(-1));
  return polar(Real(1), Real(2 * pi<Real>() * Real(k) / Real(n)));
}

}  // namespace regprod

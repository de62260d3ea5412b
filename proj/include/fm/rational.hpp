#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <string>

#include "fm/errors.hpp"

namespace fm {

// Exact arbitrary-precision rational. Masses in rational mode, and every
// quantity derived from them by field operations, are carried exactly.
using Rational = mpq_class;

inline double to_double(const Rational& q) { return q.get_d(); }
inline double to_double(double x) { return x; }

// 2^k as an exact rational, k may be negative.
inline Rational pow2_rational(long k) {
  Rational r(1);
  if (k >= 0) {
    mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(k));
  } else {
    mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(-k));
  }
  return r;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

// Element of the quadratic field Q(sqrt 2), stored as a + b*sqrt(2).
// Dyadic kernels 2^{s j} with half-integer s live here, so energy identities
// at s in {1/2, 1, 3/2, ...} can be certified by exact equality.
struct Sqrt2Ext {
  Rational a{0};
  Rational b{0};

  Sqrt2Ext() = default;
  Sqrt2Ext(Rational ra, Rational rb) : a(std::move(ra)), b(std::move(rb)) {}
  explicit Sqrt2Ext(long v) : a(v), b(0) {}
  explicit Sqrt2Ext(const Rational& v) : a(v), b(0) {}

  friend Sqrt2Ext operator+(const Sqrt2Ext& x, const Sqrt2Ext& y) {
    return {x.a + y.a, x.b + y.b};
  }
  friend Sqrt2Ext operator-(const Sqrt2Ext& x, const Sqrt2Ext& y) {
    return {x.a - y.a, x.b - y.b};
  }
  friend Sqrt2Ext operator*(const Sqrt2Ext& x, const Sqrt2Ext& y) {
    return {x.a * y.a + 2 * x.b * y.b, x.a * y.b + x.b * y.a};
  }
  friend Sqrt2Ext operator*(const Sqrt2Ext& x, const Rational& q) {
    return {x.a * q, x.b * q};
  }
  friend Sqrt2Ext operator*(const Rational& q, const Sqrt2Ext& x) { return x * q; }

  friend Sqrt2Ext operator/(const Sqrt2Ext& x, const Sqrt2Ext& y) {
    // 1/(a+b*r2) = (a-b*r2)/(a^2-2b^2); the norm vanishes only at zero.
    Rational n = y.a * y.a - 2 * y.b * y.b;
    if (n == 0) throw validation_error("Sqrt2Ext: division by zero");
    return {(x.a * y.a - 2 * x.b * y.b) / n, (x.b * y.a - x.a * y.b) / n};
  }

  Sqrt2Ext& operator+=(const Sqrt2Ext& y) {
    a += y.a;
    b += y.b;
    return *this;
  }

  friend bool operator==(const Sqrt2Ext& x, const Sqrt2Ext& y) {
    return x.a == y.a && x.b == y.b;
  }
  friend bool operator!=(const Sqrt2Ext& x, const Sqrt2Ext& y) { return !(x == y); }

  bool is_zero() const { return a == 0 && b == 0; }

  double to_double() const { return a.get_d() + b.get_d() * std::sqrt(2.0); }
};

inline double to_double(const Sqrt2Ext& x) { return x.to_double(); }

// Exact sign of a + b*sqrt(2): when the parts disagree in sign the winner is
// decided by a^2 against 2 b^2.
inline int sign(const Sqrt2Ext& x) {
  int sa = sgn(x.a);
  int sb = sgn(x.b);
  if (sa == sb) return sa;
  if (sa == 0) return sb;
  if (sb == 0) return sa;
  Rational d = x.a * x.a - 2 * x.b * x.b;
  return sgn(d) > 0 ? sa : sb;
}

inline bool operator<(const Sqrt2Ext& x, const Sqrt2Ext& y) { return sign(x - y) < 0; }
inline bool operator<=(const Sqrt2Ext& x, const Sqrt2Ext& y) { return sign(x - y) <= 0; }

// 2^{h/2} exactly: integer half gives a rational power of two, odd half
// carries a sqrt(2) factor.
inline Sqrt2Ext pow2_half(long h) {
  if (h % 2 == 0) return Sqrt2Ext{pow2_rational(h / 2), Rational(0)};
  // 2^{h/2} = 2^{(h-1)/2} * sqrt(2); h-1 is even so the division is exact.
  return Sqrt2Ext{Rational(0), pow2_rational((h - 1) / 2)};
}

}  // namespace fm

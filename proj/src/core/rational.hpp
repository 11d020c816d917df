// Exact rational scalars over 64-bit integers with overflow detection.
// All lattice/coset algebra runs on these; desk-scale inputs stay far below
// the 64-bit range, and anything larger raises Err::capacity instead of
// silently wrapping.
#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "core/error.hpp"

namespace qc {

using i64 = std::int64_t;
using i128 = __int128;

inline i64 narrow(i128 v) {
  if (v > i128(INT64_MAX) || v < i128(INT64_MIN))
    fail(Err::capacity, "exact arithmetic overflow");
  return static_cast<i64>(v);
}

inline i64 mul64(i64 a, i64 b) { return narrow(i128(a) * i128(b)); }

inline i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline i64 lcm64(i64 a, i64 b) {
  if (a == 0 || b == 0) return 0;
  i64 g = std::gcd(a, b);
  return mul64(a / g, b);
}

struct Rat {
  i64 num = 0;
  i64 den = 1;  // always > 0, gcd(num, den) == 1

  Rat() = default;
  Rat(i64 n) : num(n), den(1) {}
  Rat(i64 n, i64 d) {
    if (d == 0) fail(Err::input, "rational with zero denominator");
    i128 nn = n, dd = d;
    if (dd < 0) { nn = -nn; dd = -dd; }
    i128 g = gcd128(nn, dd);
    if (g > 1) { nn /= g; dd /= g; }
    num = narrow(nn);
    den = narrow(dd);
  }

  static Rat make128(i128 n, i128 d) {
    if (d == 0) fail(Err::input, "rational with zero denominator");
    if (d < 0) { n = -n; d = -d; }
    i128 g = gcd128(n, d);
    if (g > 1) { n /= g; d /= g; }
    Rat r;
    r.num = narrow(n);
    r.den = narrow(d);
    return r;
  }

  bool is_zero() const { return num == 0; }
  bool is_integer() const { return den == 1; }
  double to_double() const { return double(num) / double(den); }
  std::string str() const {
    return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
  }

  friend Rat operator+(const Rat& a, const Rat& b) {
    return make128(i128(a.num) * b.den + i128(b.num) * a.den, i128(a.den) * b.den);
  }
  friend Rat operator-(const Rat& a, const Rat& b) {
    return make128(i128(a.num) * b.den - i128(b.num) * a.den, i128(a.den) * b.den);
  }
  friend Rat operator*(const Rat& a, const Rat& b) {
    return make128(i128(a.num) * b.num, i128(a.den) * b.den);
  }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.num == 0) fail(Err::input, "rational division by zero");
    return make128(i128(a.num) * b.den, i128(a.den) * b.num);
  }
  Rat operator-() const { Rat r = *this; r.num = -r.num; return r; }
  friend bool operator==(const Rat& a, const Rat& b) { return a.num == b.num && a.den == b.den; }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  friend bool operator<(const Rat& a, const Rat& b) {
    return i128(a.num) * b.den < i128(b.num) * a.den;
  }

  // floor toward -inf; exact
  i64 floor() const {
    i64 q = num / den;
    if (num % den != 0 && num < 0) --q;
    return q;
  }
  Rat frac() const { return *this - Rat(floor()); }
};

using RatVec = std::vector<Rat>;

inline RatVec rat_sub(const RatVec& a, const RatVec& b) {
  RatVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline bool rat_eq(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return false;
  return true;
}

// Best rational approximation with denominator <= den_max (continued
// fractions). Returns false when no convergent lands within tol.
inline bool snap_rational(double x, i64 den_max, double tol, Rat* out) {
  if (!std::isfinite(x)) return false;
  double target = x;
  i64 p0 = 0, q0 = 1;  // h_{-2}/k_{-2}
  i64 p1 = 1, q1 = 0;  // h_{-1}/k_{-1}
  double y = x;
  for (int iter = 0; iter < 64; ++iter) {
    double fl = std::floor(y);
    if (fl > 9e17 || fl < -9e17) return false;
    i64 a = static_cast<i64>(fl);
    i128 p = i128(a) * p1 + p0;
    i128 q = i128(a) * q1 + q0;
    if (q > den_max) break;
    p0 = p1; q0 = q1;
    p1 = narrow(p); q1 = narrow(q);
    double approx = double(p1) / double(q1);
    if (std::abs(approx - target) <= tol) {
      *out = Rat(p1, q1);
      return true;
    }
    double rem = y - fl;
    if (rem < 1e-15) break;
    y = 1.0 / rem;
  }
  // last convergent with q <= den_max may still qualify
  if (q1 >= 1 && std::abs(double(p1) / double(q1) - target) <= tol) {
    *out = Rat(p1, q1);
    return true;
  }
  return false;
}

}  // namespace qc

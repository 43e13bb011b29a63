#pragma once

#include <cstdint>
#include <stdexcept>

#include "quartic/exactnum.hpp"

namespace quartic {

using i128 = __int128;
using u128 = unsigned __int128;

// Thrown by SmallRat when an intermediate leaves the 128-bit range.
struct Overflow : std::overflow_error {
  Overflow() : std::overflow_error("128-bit rational overflow") {}
};

inline u128 gcd_u128(u128 a, u128 b) {
  if (a == 0) return b;
  if (b == 0) return a;
  if ((a >> 64) == 0 && (b >> 64) == 0) {
    std::uint64_t x = static_cast<std::uint64_t>(a), y = static_cast<std::uint64_t>(b);
    while (y != 0) {
      std::uint64_t t = x % y;
      x = y;
      y = t;
    }
    return x;
  }
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline u128 abs_u128(i128 v) { return v < 0 ? static_cast<u128>(0) - static_cast<u128>(v) : static_cast<u128>(v); }

// Fixed-width rational for the sweep hot loop. Same operator surface as
// Rat, so nest formulas can be instantiated with either; every operation is
// overflow-checked and the result is kept reduced.
class SmallRat {
 public:
  SmallRat() = default;
  SmallRat(long v) : n_(v), d_(1) {}  // NOLINT(google-explicit-constructor)
  SmallRat(i128 n, i128 d) : n_(n), d_(d) {
    if (d_ == 0) throw MathError("zero denominator");
    normalize();
  }

  i128 num() const { return n_; }
  i128 den() const { return d_; }
  bool is_zero() const { return n_ == 0; }

  Rat to_rat() const { return Rat::reduce(to_big(n_), to_big(d_)); }

  static BigInt to_big(i128 v) {
    u128 m = abs_u128(v);
    BigInt hi(static_cast<unsigned long>(m >> 64));
    BigInt lo(static_cast<unsigned long>(static_cast<std::uint64_t>(m)));
    BigInt r = (hi << 64) + lo;
    return v < 0 ? BigInt(-r) : r;
  }

  SmallRat operator-() const { return raw(-n_, d_); }

  friend SmallRat operator+(const SmallRat& a, const SmallRat& b) {
    if (a.d_ == b.d_) return SmallRat(add(a.n_, b.n_), a.d_);
    return SmallRat(add(mul(a.n_, b.d_), mul(b.n_, a.d_)), mul(a.d_, b.d_));
  }
  friend SmallRat operator-(const SmallRat& a, const SmallRat& b) { return a + (-b); }
  friend SmallRat operator*(const SmallRat& a, const SmallRat& b) {
    // Cross-cancel first to keep intermediates small.
    i128 g1 = static_cast<i128>(gcd_u128(abs_u128(a.n_), abs_u128(b.d_)));
    i128 g2 = static_cast<i128>(gcd_u128(abs_u128(b.n_), abs_u128(a.d_)));
    if (g1 == 0) g1 = 1;
    if (g2 == 0) g2 = 1;
    return raw(mul(a.n_ / g1, b.n_ / g2), mul(a.d_ / g2, b.d_ / g1));
  }
  friend SmallRat operator/(const SmallRat& a, const SmallRat& b) {
    if (b.n_ == 0) throw MathError("division by zero");
    SmallRat inv = b.n_ < 0 ? raw(-b.d_, -b.n_) : raw(b.d_, b.n_);
    return a * inv;
  }
  friend bool operator==(const SmallRat& a, const SmallRat& b) { return a.n_ == b.n_ && a.d_ == b.d_; }

 private:
  static SmallRat raw(i128 n, i128 d) {
    SmallRat r;
    r.n_ = n;
    r.d_ = d;
    return r;
  }
  static i128 mul(i128 a, i128 b) {
    i128 r;
    if (__builtin_mul_overflow(a, b, &r)) throw Overflow();
    return r;
  }
  static i128 add(i128 a, i128 b) {
    i128 r;
    if (__builtin_add_overflow(a, b, &r)) throw Overflow();
    return r;
  }
  void normalize() {
    if (d_ < 0) {
      n_ = -n_;
      d_ = -d_;
    }
    u128 g = gcd_u128(abs_u128(n_), static_cast<u128>(d_));
    if (g > 1) {
      n_ /= static_cast<i128>(g);
      d_ /= static_cast<i128>(g);
    }
  }

  i128 n_ = 0;
  i128 d_ = 1;
};

}  // namespace quartic

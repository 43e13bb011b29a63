#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace quartic {

using BigInt = mpz_class;

// Raised for domain violations: zero denominators, degenerate quartets,
// arguments outside an operation's precondition.
class MathError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Reduced rational with arbitrary-precision numerator and positive
// denominator. Zero is 0/1.
class Rat {
 public:
  Rat() = default;
  Rat(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  explicit Rat(const BigInt& v) : q_(v) {}
  explicit Rat(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  // Throws MathError when den == 0.
  static Rat reduce(const BigInt& num, const BigInt& den);
  // Parses "num/den" or "num"; den may be omitted and need not be reduced.
  static Rat parse(std::string_view text);

  const BigInt& num() const { return q_.get_num(); }
  const BigInt& den() const { return q_.get_den(); }
  const mpq_class& raw() const { return q_; }

  int sign() const { return sgn(q_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return den() == 1; }
  Rat abs() const { return sign() < 0 ? -*this : *this; }
  Rat inverse() const;

  // "num/den", or "num" when den is 1.
  std::string str() const;

  Rat operator-() const { return Rat(mpq_class(-q_)); }
  Rat& operator+=(const Rat& o) { q_ += o.q_; return *this; }
  Rat& operator-=(const Rat& o) { q_ -= o.q_; return *this; }
  Rat& operator*=(const Rat& o) { q_ *= o.q_; return *this; }
  Rat& operator/=(const Rat& o);

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

  friend bool operator==(const Rat& a, const Rat& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class q_;
};

Rat pow(const Rat& base, unsigned exponent);

// max(|num|, den); at least 1.
BigInt height(const Rat& q);

// Exact integer roots. Negative input throws MathError.
std::optional<BigInt> int_fourth_root(const BigInt& n);
std::optional<BigInt> int_square_root(const BigInt& n);

// k > 0 with k^4 == q, when num and den are both fourth powers. q <= 0 throws.
std::optional<Rat> as_fourth_power(const Rat& q);
std::optional<Rat> as_square(const Rat& q);

enum class CoverMode { Direct, Indirect };

std::string_view mode_name(CoverMode m);
CoverMode parse_mode(std::string_view s);

struct Coverage {
  CoverMode mode;
  Rat k;  // Direct: n == |alpha| k^4. Indirect: n |alpha| == k^4.

  friend bool operator==(const Coverage&, const Coverage&) = default;
};

// Decides whether target n is reached from nest value alpha by a rational
// fourth-power rescaling (Direct) or by inversion plus rescaling (Indirect).
// The sign of alpha is ignored. Direct wins when both hold.
std::optional<Coverage> covers(const BigInt& n, const Rat& alpha);

inline constexpr std::uint64_t kDefaultFactorBound = 1'000'000;

// True iff some prime p = 3 (mod 4) divides n to an odd power.
// n must be positive and at most `bound`.
bool has_odd_exp_prime_3mod4(const BigInt& n, std::uint64_t bound = kDefaultFactorBound);

// Primes p <= limit, ascending.
const std::vector<std::uint32_t>& primes_up_to(std::uint32_t limit);

// Exponents of |x| reduced mod 4, zero entries dropped, ascending by prime.
// Two positive rationals differ by a fourth-power factor iff their
// signatures are equal.
struct Signature {
  std::vector<std::pair<BigInt, int>> entries;

  Signature inverse() const;
  // Product of p^e over entries.
  BigInt value() const;

  friend bool operator==(const Signature&, const Signature&) = default;
};

// nullopt when a cofactor above factor_limit^2 cannot be identified as a
// prime power ("signature unavailable"); callers fall back to covers().
std::optional<Signature> fourth_free_signature(const Rat& x, std::uint64_t factor_limit);

}  // namespace quartic

template <>
struct std::hash<quartic::Rat> {
  std::size_t operator()(const quartic::Rat& q) const noexcept;
};

#include "quartic/exactnum.hpp"

#include <algorithm>
#include <cctype>
#include <memory>
#include <mutex>

namespace quartic {

Rat Rat::reduce(const BigInt& num, const BigInt& den) {
  if (den == 0) throw MathError("zero denominator");
  return Rat(mpq_class(num, den));
}

Rat Rat::parse(std::string_view text) {
  auto parse_int = [&](std::string_view s) {
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i == s.size()) throw std::invalid_argument("bad rational: " + std::string(text));
    for (std::size_t j = i; j < s.size(); ++j)
      if (!std::isdigit(static_cast<unsigned char>(s[j])))
        throw std::invalid_argument("bad rational: " + std::string(text));
    return BigInt(std::string(s[0] == '+' ? s.substr(1) : s));
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rat(parse_int(text));
  BigInt den = parse_int(text.substr(slash + 1));
  if (den == 0) throw MathError("zero denominator: " + std::string(text));
  return reduce(parse_int(text.substr(0, slash)), den);
}

Rat Rat::inverse() const {
  if (is_zero()) throw MathError("inverse of zero");
  return Rat(mpq_class(den(), num()));
}

Rat& Rat::operator/=(const Rat& o) {
  if (o.is_zero()) throw MathError("division by zero");
  q_ /= o.q_;
  return *this;
}

std::string Rat::str() const {
  if (is_integer()) return num().get_str();
  return num().get_str() + "/" + den().get_str();
}

Rat pow(const Rat& base, unsigned exponent) {
  BigInt n, d;
  mpz_pow_ui(n.get_mpz_t(), base.num().get_mpz_t(), exponent);
  mpz_pow_ui(d.get_mpz_t(), base.den().get_mpz_t(), exponent);
  // Powers of a reduced fraction stay reduced.
  mpq_class q;
  mpz_swap(mpq_numref(q.get_mpq_t()), n.get_mpz_t());
  mpz_swap(mpq_denref(q.get_mpq_t()), d.get_mpz_t());
  return Rat(std::move(q));
}

BigInt height(const Rat& q) {
  BigInt a = ::abs(q.num());
  return a > q.den() ? a : q.den();
}

namespace {

std::optional<BigInt> exact_root(const BigInt& n, unsigned degree) {
  if (n < 0) throw MathError("root of negative integer");
  BigInt r;
  if (mpz_root(r.get_mpz_t(), n.get_mpz_t(), degree) != 0) return r;
  return std::nullopt;
}

std::optional<Rat> rat_root(const Rat& q, unsigned degree) {
  if (q.sign() <= 0) throw MathError("root of non-positive rational");
  auto n = exact_root(q.num(), degree);
  if (!n) return std::nullopt;
  auto d = exact_root(q.den(), degree);
  if (!d) return std::nullopt;
  return Rat::reduce(*n, *d);
}

}  // namespace

std::optional<BigInt> int_fourth_root(const BigInt& n) { return exact_root(n, 4); }
std::optional<BigInt> int_square_root(const BigInt& n) { return exact_root(n, 2); }

std::optional<Rat> as_fourth_power(const Rat& q) { return rat_root(q, 4); }
std::optional<Rat> as_square(const Rat& q) { return rat_root(q, 2); }

std::string_view mode_name(CoverMode m) {
  return m == CoverMode::Direct ? "direct" : "indirect";
}

CoverMode parse_mode(std::string_view s) {
  if (s == "direct") return CoverMode::Direct;
  if (s == "indirect") return CoverMode::Indirect;
  throw std::invalid_argument("unknown coverage mode: " + std::string(s));
}

std::optional<Coverage> covers(const BigInt& n, const Rat& alpha) {
  if (n <= 0) throw MathError("covers: target must be positive");
  if (alpha.is_zero()) throw MathError("covers: alpha is zero");
  Rat mag = alpha.abs();
  Rat target(n);
  if (auto k = as_fourth_power(target / mag)) return Coverage{CoverMode::Direct, *k};
  if (auto k = as_fourth_power(target * mag)) return Coverage{CoverMode::Indirect, *k};
  return std::nullopt;
}

bool has_odd_exp_prime_3mod4(const BigInt& n, std::uint64_t bound) {
  if (n <= 0) throw MathError("has_odd_exp_prime_3mod4: n must be positive");
  if (n > bound) throw MathError("has_odd_exp_prime_3mod4: n exceeds factorization bound");
  std::uint64_t m = n.get_ui();
  for (std::uint64_t p = 2; p * p <= m; ++p) {
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (p % 4 == 3 && e % 2 == 1) return true;
  }
  return m > 1 && m % 4 == 3;
}

const std::vector<std::uint32_t>& primes_up_to(std::uint32_t limit) {
  static std::mutex mu;
  // Every table ever built stays alive so returned references never dangle.
  static std::vector<std::unique_ptr<const std::vector<std::uint32_t>>> tables;
  static std::uint32_t cached_limit = 0;
  std::lock_guard lock(mu);
  if (limit > cached_limit) {
    std::uint32_t lim = std::max<std::uint32_t>(limit, 1u << 20);
    std::vector<bool> composite(lim + 1, false);
    auto primes = std::make_unique<std::vector<std::uint32_t>>();
    for (std::uint64_t i = 2; i <= lim; ++i) {
      if (composite[i]) continue;
      primes->push_back(static_cast<std::uint32_t>(i));
      for (std::uint64_t j = i * i; j <= lim; j += i) composite[j] = true;
    }
    tables.push_back(std::move(primes));
    cached_limit = lim;
  }
  return *tables.back();
}

Signature Signature::inverse() const {
  Signature out;
  for (const auto& [p, e] : entries) out.entries.emplace_back(p, (4 - e) % 4);
  return out;
}

BigInt Signature::value() const {
  BigInt v = 1;
  for (const auto& [p, e] : entries) {
    BigInt t;
    mpz_pow_ui(t.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(e));
    v *= t;
  }
  return v;
}

namespace {

// Strips primes <= limit from |m| and accumulates signed exponents.
void strip_small(BigInt& m, std::uint64_t limit, int sign,
                 std::vector<std::pair<BigInt, int>>& exps) {
  const auto& primes = primes_up_to(static_cast<std::uint32_t>(limit));
  for (std::uint32_t p : primes) {
    if (p > limit) break;
    if (BigInt(p) * p > m) break;
    int e = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
      ++e;
    }
    if (e != 0) exps.emplace_back(BigInt(p), sign * e);
  }
}

// Resolves a cofactor with no prime factor <= limit into (prime, exponent),
// or fails.
bool resolve_cofactor(const BigInt& m, std::uint64_t limit, int sign,
                      std::vector<std::pair<BigInt, int>>& exps) {
  if (m == 1) return true;
  BigInt lim2 = BigInt(static_cast<unsigned long>(limit)) * static_cast<unsigned long>(limit);
  // No factor <= limit and m <= limit^2 means m is prime.
  if (m <= lim2 || mpz_probab_prime_p(m.get_mpz_t(), 40) > 0) {
    exps.emplace_back(m, sign);
    return true;
  }
  for (unsigned e = 2; e <= 64; ++e) {
    BigInt r;
    if (mpz_root(r.get_mpz_t(), m.get_mpz_t(), e) == 0) continue;
    if (r <= lim2 || mpz_probab_prime_p(r.get_mpz_t(), 40) > 0) {
      exps.emplace_back(r, sign * static_cast<int>(e));
      return true;
    }
  }
  return false;
}

}  // namespace

std::optional<Signature> fourth_free_signature(const Rat& x, std::uint64_t factor_limit) {
  if (x.is_zero()) throw MathError("signature of zero");
  if (factor_limit < 2) factor_limit = 2;
  std::vector<std::pair<BigInt, int>> exps;
  BigInt num = ::abs(x.num());
  BigInt den = x.den();
  strip_small(num, factor_limit, +1, exps);
  strip_small(den, factor_limit, -1, exps);
  // Trial division above stops at sqrt; anything left below the limit is prime.
  if (!resolve_cofactor(num, factor_limit, +1, exps)) return std::nullopt;
  if (!resolve_cofactor(den, factor_limit, -1, exps)) return std::nullopt;

  std::sort(exps.begin(), exps.end(),
            [](const auto& a, const auto& b) { return cmp(a.first, b.first) < 0; });
  Signature sig;
  for (std::size_t i = 0; i < exps.size();) {
    std::size_t j = i;
    int e = 0;
    while (j < exps.size() && exps[j].first == exps[i].first) e += exps[j++].second;
    int r = ((e % 4) + 4) % 4;
    if (r != 0) sig.entries.emplace_back(exps[i].first, r);
    i = j;
  }
  return sig;
}

}  // namespace quartic

std::size_t std::hash<quartic::Rat>::operator()(const quartic::Rat& q) const noexcept {
  auto h = [](const mpz_class& z) -> std::size_t {
    std::size_t v = mpz_size(z.get_mpz_t()) ? mpz_getlimbn(z.get_mpz_t(), 0) : 0;
    return v ^ (static_cast<std::size_t>(mpz_sgn(z.get_mpz_t()) + 1) << 61);
  };
  return h(q.num()) * 1000003u ^ h(q.den());
}

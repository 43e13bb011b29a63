#pragma once

// Helpers shared by the test binaries: seeded random rationals and
// brute-force oracles that avoid the library's fast paths.

#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "quartic/enumerate.hpp"
#include "quartic/exactnum.hpp"
#include "quartic/identity.hpp"
#include "quartic/nests.hpp"

namespace testing_support {

using namespace quartic;

inline constexpr std::uint64_t kDefaultSeed = 20240611;

// Uniform nonzero reduced rational of height <= h, random sign.
inline Rat random_rat(std::mt19937_64& rng, long h, bool allow_negative = true) {
  std::uniform_int_distribution<long> d(1, h);
  for (;;) {
    long i = d(rng), j = d(rng);
    if (std::gcd(i, j) != 1) continue;
    if (allow_negative && (rng() & 1)) i = -i;
    return Rat::reduce(BigInt(i), BigInt(j));
  }
}

// Random parameters accepted by domain_ok.
inline Params random_params(std::mt19937_64& rng, FamilyId f, long h) {
  for (;;) {
    Params p{random_rat(rng, h), std::nullopt};
    if (family_info(f).param_count == 2) p.v = random_rat(rng, h);
    if (domain_ok(f, p)) return p;
  }
}

// Every reduced i/j with 0 < max(|i|, j) <= m, built by scanning the grid
// rather than by Farey order.
inline std::vector<Rat> grid_rationals(long m, bool negative) {
  std::set<Rat> seen;
  for (long i = -m; i <= m; ++i) {
    if (i == 0 || (i < 0 && !negative)) continue;
    for (long j = 1; j <= m; ++j) seen.insert(Rat::reduce(BigInt(i), BigInt(j)));
  }
  return {seen.begin(), seen.end()};
}

// n/|a| or n|a| as a fourth power, tested through integer roots of the
// cross products instead of covers().
inline std::optional<Coverage> naive_cover(long n, const Rat& alpha) {
  const BigInt an = abs(alpha.num()), ad = alpha.den();
  auto fourth = [](const BigInt& num, const BigInt& den) -> std::optional<Rat> {
    // num/den, not necessarily reduced; fourth power iff num*den^3 is one.
    BigInt prod = num * den * den * den;
    BigInt r;
    if (!mpz_root(r.get_mpz_t(), prod.get_mpz_t(), 4)) return std::nullopt;
    return Rat::reduce(r, den);
  };
  if (auto k = fourth(BigInt(n) * ad, an)) return Coverage{CoverMode::Direct, *k};
  if (auto k = fourth(BigInt(n) * an, ad)) return Coverage{CoverMode::Indirect, *k};
  return std::nullopt;
}

struct OracleRecord {
  FamilyId family;
  Params params;
  CoverMode mode;
  Rat k;
  Quartet witness;
};

inline bool oracle_params_before(const Params& x, const Params& y) {
  BigInt hx = height(x.u), hy = height(y.u);
  if (x.v) hx = std::max(hx, height(*x.v));
  if (y.v) hy = std::max(hy, height(*y.v));
  if (hx != hy) return hx < hy;
  if (x.u != y.u) return x.u < y.u;
  if (x.v && y.v) return *x.v < *y.v;
  return !x.v && y.v;
}

// Transform chain written out longhand.
inline Quartet oracle_witness(long n, const Quartet& base, const Coverage& c) {
  Rat a = base.a;
  Rat A = base.terms.A, B = base.terms.B, C = base.terms.C, D = base.terms.D;
  if (a.sign() < 0) {
    a = -a;
    std::swap(B, D);
  }
  if (c.mode == CoverMode::Indirect) {
    a = a.inverse();
    std::swap(A, B);
    std::swap(C, D);
  }
  a *= pow(c.k, 4);
  A *= c.k;
  C *= c.k;
  BigInt l = 1;
  for (const Rat* x : {&A, &B, &C, &D}) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x->den().get_mpz_t());
  BigInt g = 0;
  for (const Rat* x : {&A, &B, &C, &D}) {
    BigInt v = x->num() * (l / x->den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  }
  Rat f = Rat::reduce(l, g);
  (void)n;
  return Quartet{a, {A * f, B * f, C * f, D * f}};
}

inline bool oracle_trivial(const Quartet& s) {
  Rat A = s.terms.A.abs(), B = s.terms.B.abs(), C = s.terms.C.abs(), D = s.terms.D.abs();
  if (B == D) return true;
  if (A == C && B == D) return true;
  return s.a == Rat(1) && ((A == C && B == D) || (A == D && B == C));
}

inline bool oracle_has_zero(const Terms& t) {
  return t.A.is_zero() || t.B.is_zero() || t.C.is_zero() || t.D.is_zero();
}

// Key: (n, mode). Brute-force sweep of one family with default policy.
inline std::map<std::pair<long, CoverMode>, OracleRecord> oracle_sweep(FamilyId f, long m, long lo,
                                                                      long hi) {
  std::map<std::pair<long, CoverMode>, OracleRecord> best;
  auto us = grid_rationals(m, true);
  std::vector<std::optional<Rat>> vs;
  if (family_info(f).param_count == 2)
    for (auto& v : us) vs.emplace_back(v);
  else
    vs.emplace_back(std::nullopt);
  for (const auto& u : us) {
    for (const auto& v : vs) {
      Params p{u, v};
      if (max_height(p) <= 1) continue;
      // Domain check by hand: any throw or B^4 = D^4 leaves the point out.
      Rat a;
      std::array<Rat, 4> g;
      try {
        Rat vv = v ? *v : Rat(0);
        a = formulas::coefficient<Rat>(f, u, vv);
        g = formulas::generators<Rat>(f, u, vv, a);
      } catch (const MathError&) {
        continue;
      }
      if (a.is_zero()) continue;
      Quartet base{a, {g[0] + g[1], g[2] - g[3], g[0] - g[1], g[2] + g[3]}};
      if (base.terms.B.abs() == base.terms.D.abs()) continue;
      for (long n = lo; n <= hi; ++n) {
        auto c = naive_cover(n, a);
        if (!c) continue;
        Quartet w = oracle_witness(n, base, *c);
        if (oracle_trivial(w) || oracle_has_zero(w.terms)) continue;
        auto key = std::make_pair(n, c->mode);
        auto it = best.find(key);
        if (it == best.end() || oracle_params_before(p, it->second.params))
          best[key] = OracleRecord{f, p, c->mode, c->k, w};
      }
    }
  }
  return best;
}

}  // namespace testing_support

#include "quartic/sieve.hpp"

#include <algorithm>
#include <bitset>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>
#include <thread>

namespace quartic {

bool is_supported_shift(const Rat& c, bool experimental) {
  for (const Rat& v : {Rat(-3), Rat(-1), Rat(2), Rat(3), Rat::reduce(9, 4)})
    if (c == v) return true;
  return experimental && c == Rat::reduce(-9, 4);
}

ClearedForm cleared_form(std::int64_t a, const Rat& c) {
  auto s = int_square_root(c.den());
  if (!s) throw MathError("shift denominator must be a perfect square: " + c.str());
  const std::int64_t scale = s->get_si();
  return ClearedForm{c.num().get_si(), a * c.den().get_si(), scale};
}

std::optional<FamilyId> family_for_shift(const Rat& c) {
  if (c == Rat(-3)) return FamilyId::A11;
  if (c == Rat(-1)) return FamilyId::B11;
  if (c == Rat(2)) return FamilyId::B12;
  if (c == Rat(3)) return FamilyId::B14;
  if (c == Rat::reduce(9, 4)) return FamilyId::B15;
  return std::nullopt;
}

namespace {

int mod8(std::int64_t v) { return static_cast<int>(((v % 8) + 8) % 8); }

// (scale u)^2 mod 8 over u of one parity; scale is 2 for the 9/4 form.
std::set<int> square_residues(bool odd, std::int64_t scale) {
  std::set<int> out;
  for (std::int64_t u = odd ? 1 : 0; u < 8; u += 2) out.insert(mod8(scale * scale * u * u));
  return out;
}
std::vector<int> fourth_residues(bool odd) { return odd ? std::vector<int>{1} : std::vector<int>{0}; }

}  // namespace

std::vector<SieveRow> parity_table(std::int64_t a, const Rat& c) {
  const ClearedForm form = cleared_form(a, c);
  std::vector<SieveRow> rows;
  for (bool u_odd : {true, false}) {
    for (bool x_odd : {true, false}) {
      for (bool y_odd : {true, false}) {
        if (!x_odd && !y_odd) continue;
        if (!u_odd && !x_odd) continue;
        std::set<int> lhs, rhs;
        for (int s : square_residues(u_odd, form.u_scale))
          for (int f : fourth_residues(x_odd)) lhs.insert(mod8(s + form.lhs_coeff * f));
        for (int f : fourth_residues(y_odd)) rhs.insert(mod8(form.rhs_coeff * f));
        std::vector<int> matched;
        std::set_intersection(lhs.begin(), lhs.end(), rhs.begin(), rhs.end(), std::back_inserter(matched));
        if (matched.empty()) continue;
        rows.push_back(SieveRow{a, c, u_odd, x_odd, y_odd, {lhs.begin(), lhs.end()},
                                {rhs.begin(), rhs.end()}, std::move(matched)});
      }
    }
  }
  return rows;
}

// ---------------------------------------------------------------------------

namespace {

template <unsigned M>
std::bitset<M> square_mask() {
  std::bitset<M> b;
  for (unsigned i = 0; i < M; ++i) b.set((i * i) % M);
  return b;
}

}  // namespace

bool is_square_i128(__int128 v, __int128* root) {
  if (v < 0) return false;
  static const auto m64 = square_mask<64>();
  static const auto m63 = square_mask<63>();
  static const auto m65 = square_mask<65>();
  if (!m64.test(static_cast<unsigned>(v & 63))) return false;
  if (!m63.test(static_cast<unsigned>(v % 63))) return false;
  if (!m65.test(static_cast<unsigned>(v % 65))) return false;
  __int128 r = static_cast<__int128>(std::sqrt(static_cast<long double>(v)));
  while (r > 0 && r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  if (r * r != v) return false;
  if (root) *root = r;
  return true;
}

long double TargetedQuery::y_ratio() const {
  long double ratio = std::fabs(static_cast<long double>(a) /
                                (c.num().get_d() / c.den().get_d()));
  return std::pow(ratio, 0.25L);
}

void TargetedQuery::validate() const {
  if (a == 0) throw std::invalid_argument("a must be nonzero");
  if (x_max < 1) throw std::invalid_argument("xmax must be at least 1");
  if (!is_supported_shift(c, experimental))
    throw std::invalid_argument("unsupported shift c = " + c.str());
  if (threads < 1) throw std::invalid_argument("threads must be at least 1");
}

TargetedResult targeted(const TargetedQuery& query) {
  query.validate();
  TargetedResult result;
  const std::int64_t target = std::llabs(query.a);
  if (query.c == Rat::reduce(9, 4) && static_cast<std::uint64_t>(target) <= kDefaultFactorBound &&
      has_odd_exp_prime_3mod4(BigInt(static_cast<long>(target)))) {
    result.excluded = true;
    return result;
  }

  const ClearedForm form = cleared_form(query.a, query.c);
  const long double ratio = query.y_ratio();
  const unsigned nthreads = std::max(1u, query.threads);

  struct Raw {
    __int128 u;
    std::int64_t x, y;
  };
  std::vector<std::vector<Raw>> found(nthreads);
  std::vector<std::uint64_t> tested(nthreads, 0);

  auto scan = [&](unsigned t) {
    for (std::int64_t x = 1 + t; x <= query.x_max; x += nthreads) {
      const __int128 x2 = static_cast<__int128>(x) * x;
      const __int128 lhs = static_cast<__int128>(form.lhs_coeff) * x2 * x2;
      const auto y_max = static_cast<std::int64_t>(std::ceil(ratio * static_cast<long double>(x)));
      for (std::int64_t y = 1; y <= y_max; ++y) {
        if (std::gcd(x, y) != 1) continue;
        ++tested[t];
        const __int128 y2 = static_cast<__int128>(y) * y;
        const __int128 v = static_cast<__int128>(form.rhs_coeff) * y2 * y2 - lhs;
        __int128 root;
        if (v >= 0 && is_square_i128(v, &root)) found[t].push_back({root, x, y});
      }
    }
  };
  if (nthreads == 1) {
    scan(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(scan, t);
  }

  std::vector<Raw> raw;
  for (unsigned t = 0; t < nthreads; ++t) {
    raw.insert(raw.end(), found[t].begin(), found[t].end());
    result.pairs_tested += tested[t];
  }
  std::sort(raw.begin(), raw.end(), [](const Raw& l, const Raw& r) {
    return l.x != r.x ? l.x < r.x : l.y < r.y;
  });

  const BigInt n(static_cast<long>(target));
  const auto family = family_for_shift(query.c);
  for (const auto& h : raw) {
    TargetedHit hit;
    hit.u = SmallRat::to_big(h.u);
    hit.x = h.x;
    hit.y = h.y;
    hit.u_hat = Rat::reduce(hit.u, BigInt(static_cast<long>(form.u_scale)) * h.x * h.x);
    const Rat alpha = hit.u_hat * hit.u_hat + query.c;
    auto cov = covers(n, alpha);
    if (!cov) throw std::logic_error("targeted hit does not cover |a|");
    hit.coverage = *cov;
    if (family) {
      Params params{hit.u_hat, std::nullopt};
      if (domain_ok(*family, params)) {
        NestPoint pt = eval(*family, params);
        auto w = witness_for(target, pt, *cov);
        if (auto* q = std::get_if<Quartet>(&w)) {
          CoverageRecord rec;
          rec.n = target;
          rec.family = *family;
          rec.params = params;
          rec.alpha = pt.a;
          rec.mode = cov->mode;
          rec.k = cov->k;
          rec.witness = *q;
          hit.record = std::move(rec);
        }
      }
    }
    result.hits.push_back(std::move(hit));
  }
  return result;
}

}  // namespace quartic

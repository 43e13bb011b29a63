#include "quartic/enumerate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace quartic {

std::vector<Rat> rationals_up_to(std::uint64_t max_height, bool include_negative) {
  std::vector<Rat> out;
  std::vector<Rat> level;
  for (std::uint64_t h = 1; h <= max_height; ++h) {
    level.clear();
    for (std::uint64_t i = 1; i <= h; ++i)
      if (std::gcd(i, h) == 1) level.push_back(Rat::reduce(BigInt(static_cast<unsigned long>(i)),
                                                           BigInt(static_cast<unsigned long>(h))));
    for (std::uint64_t j = 1; j < h; ++j)
      if (std::gcd(j, h) == 1) level.push_back(Rat::reduce(BigInt(static_cast<unsigned long>(h)),
                                                           BigInt(static_cast<unsigned long>(j))));
    std::sort(level.begin(), level.end());
    if (include_negative)
      for (auto it = level.rbegin(); it != level.rend(); ++it) out.push_back(-*it);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

void SweepConfig::validate() const {
  if (max_height < 2) throw std::invalid_argument("max height must be at least 2");
  if (target_lo < 1 || target_hi < target_lo) throw std::invalid_argument("bad target range");
  if (shard_count < 1 || shard_index < 1 || shard_index > shard_count)
    throw std::invalid_argument("shard index must satisfy 1 <= i <= n");
  if (threads < 1) throw std::invalid_argument("threads must be at least 1");
}

RunInfo RunInfo::from(const SweepConfig& c) {
  return RunInfo{c.family,
                 c.max_height,
                 c.target_lo,
                 c.target_hi,
                 c.include_negative_params,
                 c.min_height_exclusive,
                 c.allow_zero_components,
                 c.shard_index,
                 c.shard_count};
}

bool record_less(const CoverageRecord& a, const CoverageRecord& b) {
  if (a.n != b.n) return a.n < b.n;
  if (a.family != b.family) return a.family < b.family;
  if (a.mode != b.mode) return a.mode < b.mode;
  BigInt ha = max_height(a.params), hb = max_height(b.params);
  if (ha != hb) return ha < hb;
  return params_less(a.params, b.params);
}

namespace {

bool same_key(const CoverageRecord& a, const CoverageRecord& b) {
  return a.n == b.n && a.family == b.family && a.mode == b.mode;
}

void canonicalize_runs(std::vector<RunInfo>& runs) {
  std::sort(runs.begin(), runs.end());
  runs.erase(std::unique(runs.begin(), runs.end()), runs.end());
  std::vector<RunInfo> out;
  for (std::size_t i = 0; i < runs.size();) {
    std::size_t j = i;
    auto sans_index = [](RunInfo r) {
      r.shard_index = 1;
      return r;
    };
    while (j < runs.size() && sans_index(runs[j]) == sans_index(runs[i])) ++j;
    // runs[i..j) differ only in shard_index and are sorted and unique.
    if (runs[i].shard_count > 1 && j - i == runs[i].shard_count) {
      RunInfo whole = runs[i];
      whole.shard_index = 1;
      whole.shard_count = 1;
      out.push_back(whole);
    } else {
      out.insert(out.end(), runs.begin() + static_cast<std::ptrdiff_t>(i),
                 runs.begin() + static_cast<std::ptrdiff_t>(j));
    }
    i = j;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  runs = std::move(out);
}

}  // namespace

void CoverageStore::canonicalize() {
  canonicalize_runs(runs);
  std::stable_sort(records.begin(), records.end(), record_less);
}

CoverageStore merge(const std::vector<CoverageStore>& stores) {
  CoverageStore all;
  for (const auto& s : stores) {
    all.runs.insert(all.runs.end(), s.runs.begin(), s.runs.end());
    all.records.insert(all.records.end(), s.records.begin(), s.records.end());
  }
  all.canonicalize();
  CoverageStore out;
  out.runs = std::move(all.runs);
  for (auto& rec : all.records) {
    if (!out.records.empty() && same_key(out.records.back(), rec)) {
      const auto& kept = out.records.back();
      if (kept.params == rec.params && !(kept == rec))
        throw std::runtime_error("conflicting records for n = " + std::to_string(rec.n) + ", " +
                                 std::string(family_name(rec.family)) + ", " +
                                 std::string(mode_name(rec.mode)));
      continue;
    }
    out.records.push_back(std::move(rec));
  }
  return out;
}

SweepSummary summarize(const CoverageStore& store, std::int64_t lo, std::int64_t hi) {
  SweepSummary s;
  s.target_lo = lo;
  s.target_hi = hi;
  s.status.assign(static_cast<std::size_t>(std::max<std::int64_t>(0, hi - lo + 1)), TargetStatus::None);
  for (const auto& r : store.records) {
    if (r.n < lo || r.n > hi) continue;
    auto& st = s.status[static_cast<std::size_t>(r.n - lo)];
    if (r.mode == CoverMode::Direct)
      st = TargetStatus::Direct;
    else if (st == TargetStatus::None)
      st = TargetStatus::Indirect;
  }
  for (auto st : s.status) {
    if (st == TargetStatus::Direct) ++s.direct;
    if (st == TargetStatus::Indirect) ++s.indirect;
  }
  return s;
}

std::variant<Quartet, Rejection> witness_for(std::int64_t n, const NestPoint& point,
                                             const Coverage& coverage, bool allow_zero_components) {
  Quartet s = point.quartet;
  if (s.a.sign() < 0) s = negate(s);
  if (coverage.mode == CoverMode::Indirect) s = invert(s);
  s = integerize(scale(s, coverage.k));
  if (s.a != Rat(n) || !residual(s).is_zero())
    throw std::logic_error("witness for n = " + std::to_string(n) + " from " +
                           std::string(family_name(point.family)) + " fails the identity");
  if (is_trivial(s)) return Rejection::Trivial;
  if (!allow_zero_components && has_zero_component(s.terms)) return Rejection::ZeroComponent;
  return s;
}

// ---------------------------------------------------------------------------
// Target classification

namespace {

std::uint64_t fourth_free_part(std::uint64_t n) {
  std::uint64_t out = 1;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    for (int i = 0; i < e % 4; ++i) out *= p;
  }
  if (n > 1) out *= n;
  return out;
}

template <class Int>
bool is_fourth_power(Int m) {
  if (m <= 1) return true;
  long double est = std::pow(static_cast<long double>(m), 0.25L);
  Int r = static_cast<Int>(std::llround(est));
  for (Int c = (r > 1 ? r - 1 : 1); c <= r + 1; ++c) {
    Int c2 = c * c;
    if (c2 * c2 == m) return true;
  }
  return false;
}

// Multiplies acc by p^e with saturation at cap + 1.
void mul_capped(std::uint64_t& acc, std::uint64_t p, int e, std::uint64_t cap) {
  for (int i = 0; i < e; ++i) {
    if (acc > cap / p) {
      acc = cap + 1;
      return;
    }
    acc *= p;
  }
}

}  // namespace

TargetClassifier::TargetClassifier(std::int64_t lo, std::int64_t hi) : lo_(lo), hi_(hi) {
  if (lo < 1 || hi < lo) throw std::invalid_argument("bad target range");
  for (std::uint32_t p : primes_up_to(static_cast<std::uint32_t>(hi))) {
    if (p > static_cast<std::uint64_t>(hi)) break;
    primes_.push_back(p);
  }
  for (std::int64_t n = lo; n <= hi; ++n)
    by_class_[fourth_free_part(static_cast<std::uint64_t>(n))].push_back(n);
}

template <class Int>
bool TargetClassifier::class_values(Int num, Int den, std::uint64_t& direct,
                                    std::uint64_t& inverse) const {
  const std::uint64_t cap = static_cast<std::uint64_t>(hi_);
  direct = 1;
  inverse = 1;
  auto strip = [&](Int& m, std::uint32_t p) {
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    return e;
  };
  for (std::uint32_t p : primes_) {
    bool num_done = num < static_cast<Int>(p);
    bool den_done = den < static_cast<Int>(p);
    if (num_done && den_done) break;
    int e = (num_done ? 0 : strip(num, p)) - (den_done ? 0 : strip(den, p));
    int r = ((e % 4) + 4) % 4;
    if (r != 0) {
      mul_capped(direct, p, r, cap);
      mul_capped(inverse, p, 4 - r, cap);
      if (direct > cap && inverse > cap) return false;
    }
    // After stripping every prime <= p, a cofactor below p^2 is 1 or a
    // single prime. A prime above the largest target prime has exponent 1
    // and no target can absorb it.
    const Int pp = static_cast<Int>(p) * p;
    for (Int m : {num, den})
      if (m > 1 && m < pp && m > static_cast<Int>(cap)) return false;
    if (num == 1 && den == 1) break;
  }
  return is_fourth_power(num) && is_fourth_power(den);
}

void TargetClassifier::emit(std::uint64_t direct, std::uint64_t inverse, std::vector<Hit>& out) const {
  const std::uint64_t cap = static_cast<std::uint64_t>(hi_);
  if (direct <= cap) {
    if (auto it = by_class_.find(direct); it != by_class_.end())
      for (auto n : it->second) out.push_back({n, CoverMode::Direct});
  }
  if (inverse <= cap && inverse != direct) {
    if (auto it = by_class_.find(inverse); it != by_class_.end())
      for (auto n : it->second) out.push_back({n, CoverMode::Indirect});
  }
}

void TargetClassifier::classify(u128 num, u128 den, std::vector<Hit>& out) const {
  if (num == 0) return;
  std::uint64_t d = 0, i = 0;
  bool ok;
  if ((num >> 64) == 0 && (den >> 64) == 0)
    ok = class_values<std::uint64_t>(static_cast<std::uint64_t>(num), static_cast<std::uint64_t>(den), d, i);
  else
    ok = class_values<u128>(num, den, d, i);
  if (ok) emit(d, i, out);
}

void TargetClassifier::classify(const Rat& alpha, std::vector<Hit>& out) const {
  if (alpha.is_zero()) return;
  BigInt num = ::abs(alpha.num());
  BigInt den = alpha.den();
  if (mpz_sizeinbase(num.get_mpz_t(), 2) <= 128 && mpz_sizeinbase(den.get_mpz_t(), 2) <= 128) {
    auto to128 = [](const BigInt& z) {
      BigInt hi = z >> 64;
      BigInt lo = z - (hi << 64);
      return (static_cast<u128>(hi.get_ui()) << 64) | static_cast<u128>(lo.get_ui());
    };
    classify(to128(num), to128(den), out);
    return;
  }
  const std::uint64_t cap = static_cast<std::uint64_t>(hi_);
  std::uint64_t direct = 1, inverse = 1;
  for (std::uint32_t p : primes_) {
    int e = 0;
    while (mpz_divisible_ui_p(num.get_mpz_t(), p)) {
      mpz_divexact_ui(num.get_mpz_t(), num.get_mpz_t(), p);
      ++e;
    }
    while (mpz_divisible_ui_p(den.get_mpz_t(), p)) {
      mpz_divexact_ui(den.get_mpz_t(), den.get_mpz_t(), p);
      --e;
    }
    int r = ((e % 4) + 4) % 4;
    if (r != 0) {
      mul_capped(direct, p, r, cap);
      mul_capped(inverse, p, 4 - r, cap);
      if (direct > cap && inverse > cap) return;
    }
  }
  if (!int_fourth_root(num) || !int_fourth_root(den)) return;
  emit(direct, inverse, out);
}

// ---------------------------------------------------------------------------
// Sweep

namespace {

struct Candidate {
  std::uint64_t height;
  std::int64_t un, ud, vn, vd;  // v unused for tier 2
};

struct SmallParam {
  std::int64_t num, den;
  std::uint64_t height;
};

struct Worker {
  const SweepConfig& cfg;
  const TargetClassifier& classifier;
  const std::vector<Rat>& values;
  const std::vector<SmallParam>& small;
  bool two_params;

  std::map<std::pair<std::int64_t, CoverMode>, CoverageRecord> best;
  SweepStats stats;
  std::vector<TargetClassifier::Hit> hits;

  void visit(std::size_t ui, std::size_t vi) {
    const SmallParam& u = small[ui];
    const SmallParam* v = two_params ? &small[vi] : nullptr;
    std::uint64_t h = std::max(u.height, v ? v->height : 0);
    if (h <= cfg.min_height_exclusive) return;
    ++stats.tuples;
    hits.clear();
    try {
      SmallRat su(u.num, u.den);
      SmallRat sv = v ? SmallRat(v->num, v->den) : SmallRat(0);
      SmallRat a = formulas::coefficient<SmallRat>(cfg.family, su, sv);
      if (a.is_zero()) {
        ++stats.skipped_domain;
        return;
      }
      classifier.classify(abs_u128(a.num()), static_cast<u128>(a.den()), hits);
    } catch (const Overflow&) {
      ++stats.slow_path;
      try {
        Rat a = formulas::coefficient<Rat>(cfg.family, values[ui], v ? values[vi] : Rat(0));
        if (a.is_zero()) {
          ++stats.skipped_domain;
          return;
        }
        classifier.classify(a, hits);
      } catch (const MathError&) {
        ++stats.skipped_domain;
        return;
      }
    } catch (const MathError&) {
      ++stats.skipped_domain;
      return;
    }
    if (hits.empty()) return;
    stats.classified_hits += hits.size();

    Params params{values[ui], v ? std::optional<Rat>(values[vi]) : std::nullopt};
    std::optional<NestPoint> point;
    for (const auto& hit : hits) {
      auto key = std::make_pair(hit.n, hit.mode);
      auto it = best.find(key);
      if (it != best.end()) {
        BigInt hb = max_height(it->second.params);
        if (hb < h || (hb == h && !params_less(params, it->second.params))) continue;
      }
      if (!point) {
        if (!domain_ok(cfg.family, params)) {
          ++stats.skipped_domain;
          return;
        }
        point = eval(cfg.family, params);
      }
      auto cov = covers(BigInt(static_cast<long>(hit.n)), point->a);
      if (!cov || cov->mode != hit.mode)
        throw std::logic_error("classifier disagrees with covers() for n = " + std::to_string(hit.n));
      auto w = witness_for(hit.n, *point, *cov, cfg.allow_zero_components);
      if (auto* rej = std::get_if<Rejection>(&w)) {
        if (*rej == Rejection::Trivial)
          ++stats.rejected_trivial;
        else
          ++stats.rejected_zero;
        continue;
      }
      CoverageRecord rec;
      rec.n = hit.n;
      rec.family = cfg.family;
      rec.params = params;
      rec.alpha = point->a;
      rec.mode = hit.mode;
      rec.k = cov->k;
      rec.witness = std::get<Quartet>(std::move(w));
      if (has_zero_component(rec.witness.terms)) rec.flags.emplace_back(kFlagDegenerateZero);
      best[key] = std::move(rec);
    }
  }
};

}  // namespace

SweepResult sweep(const SweepConfig& config) {
  config.validate();
  const bool two = family_info(config.family).param_count == 2;
  const std::vector<Rat> values = rationals_up_to(config.max_height, config.include_negative_params);
  std::vector<SmallParam> small;
  small.reserve(values.size());
  for (const auto& q : values)
    small.push_back({q.num().get_si(), q.den().get_si(), height(q).get_ui()});

  std::vector<std::size_t> mine;
  for (std::size_t i = 0; i < values.size(); ++i)
    if (i % config.shard_count == config.shard_index - 1) mine.push_back(i);

  TargetClassifier classifier(config.target_lo, config.target_hi);
  const unsigned nthreads = std::max(1u, config.threads);
  std::vector<Worker> workers;
  workers.reserve(nthreads);
  for (unsigned t = 0; t < nthreads; ++t)
    workers.push_back(Worker{config, classifier, values, small, two, {}, {}, {}});

  auto run = [&](unsigned t) {
    Worker& w = workers[t];
    for (std::size_t k = t; k < mine.size(); k += nthreads) {
      std::size_t ui = mine[k];
      if (two) {
        for (std::size_t vi = 0; vi < values.size(); ++vi) w.visit(ui, vi);
      } else {
        w.visit(ui, 0);
      }
    }
  };
  if (nthreads == 1) {
    run(0);
  } else {
    std::vector<std::exception_ptr> errors(nthreads);
    {
      std::vector<std::jthread> pool;
      for (unsigned t = 0; t < nthreads; ++t)
        pool.emplace_back([&, t] {
          try {
            run(t);
          } catch (...) {
            errors[t] = std::current_exception();
          }
        });
    }
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  std::vector<CoverageStore> parts;
  SweepResult result;
  for (auto& w : workers) {
    CoverageStore part;
    for (auto& [key, rec] : w.best) part.records.push_back(std::move(rec));
    parts.push_back(std::move(part));
    result.stats.tuples += w.stats.tuples;
    result.stats.skipped_domain += w.stats.skipped_domain;
    result.stats.classified_hits += w.stats.classified_hits;
    result.stats.rejected_trivial += w.stats.rejected_trivial;
    result.stats.rejected_zero += w.stats.rejected_zero;
    result.stats.slow_path += w.stats.slow_path;
  }
  result.store = merge(parts);
  result.store.runs.push_back(RunInfo::from(config));
  result.store.canonicalize();
  result.summary = summarize(result.store, config.target_lo, config.target_hi);
  return result;
}

// ---------------------------------------------------------------------------
// Verification

std::vector<std::string> verify_record(const CoverageRecord& rec) {
  std::vector<std::string> problems;
  auto fail = [&](std::string msg) { problems.push_back(std::move(msg)); };
  try {
    const Terms& t = rec.witness.terms;
    BigInt g = 0;
    bool integral = true;
    for (const Rat* x : {&t.A, &t.B, &t.C, &t.D}) {
      if (!x->is_integer()) integral = false;
      g = gcd(g, x->num());
    }
    if (!integral) fail("witness terms are not integers");
    else if (g != 1) fail("witness terms share a common factor");
    if (rec.witness.a != Rat(rec.n)) fail("witness coefficient differs from n");
    if (!residual(rec.witness).is_zero()) fail("witness residual is nonzero");
    if (is_trivial(rec.witness)) fail("witness is trivial");
    bool zero = has_zero_component(t);
    bool flagged = std::find(rec.flags.begin(), rec.flags.end(), kFlagDegenerateZero) != rec.flags.end();
    if (zero != flagged) fail("degenerate-zero flag does not match witness");
    if (closed_form_a(rec.family, rec.params) != rec.alpha) fail("alpha differs from the family's closed form");
    auto cov = covers(BigInt(static_cast<long>(rec.n)), rec.alpha);
    if (!cov) fail("alpha does not cover n");
    else if (cov->mode != rec.mode || cov->k != rec.k) fail("coverage mode or scale differs");
  } catch (const std::exception& e) {
    fail(std::string("exception: ") + e.what());
  }
  return problems;
}

}  // namespace quartic

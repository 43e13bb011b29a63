#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "quartic/enumerate.hpp"
#include "quartic/exactnum.hpp"

namespace quartic {

// Shifted-square search u^2 + c X^4 = a Y^4 over integers, with the
// rational parameter u_hat = u / X^2 and u_hat^2 + c = a (Y/X)^4.
//
// A fractional c = cn/s^2 is handled in its cleared form
// U^2 + cn X^4 = (a s^2) Y^4 with U = s u; for c = 9/4 that is
// (2u)^2 + 9 X^4 = 4a Y^4.
struct ClearedForm {
  std::int64_t lhs_coeff;  // multiplies X^4
  std::int64_t rhs_coeff;  // multiplies Y^4
  std::int64_t u_scale;    // U = u_scale * u
};

// Admissible shift values; c = -9/4 only when `experimental` is set.
bool is_supported_shift(const Rat& c, bool experimental = false);
ClearedForm cleared_form(std::int64_t a, const Rat& c);

// Tier-2 family whose coefficient is u^2 + c, if one exists.
std::optional<FamilyId> family_for_shift(const Rat& c);

struct SieveRow {
  std::int64_t a;
  Rat c;
  bool u_odd, x_odd, y_odd;
  std::vector<int> lhs, rhs;  // residue sets mod 8
  std::vector<int> matched;   // lhs intersected with rhs

  friend bool operator==(const SieveRow&, const SieveRow&) = default;
};

// Parity combinations of (U, X, Y) whose residue sets mod 8 intersect.
// (X, Y) both even and (U, X) both even are excluded as reducible.
std::vector<SieveRow> parity_table(std::int64_t a, const Rat& c);

struct TargetedQuery {
  std::int64_t a = 1;
  Rat c = Rat(-3);
  std::int64_t x_max = 20000;
  bool experimental = false;
  unsigned threads = 1;

  // (|a/c|)^(1/4); caps Y at ceil(ratio * X).
  long double y_ratio() const;
  void validate() const;
};

struct TargetedHit {
  BigInt u;  // integer solution of the cleared form, U >= 0
  std::int64_t x, y;
  Rat u_hat;  // U / (u_scale X^2)
  Coverage coverage;  // of |a| by u_hat^2 + c
  std::optional<CoverageRecord> record;  // witness via the matching family
};

struct TargetedResult {
  bool excluded = false;  // skipped by the prime = 3 (mod 4) rule (c = 9/4)
  std::vector<TargetedHit> hits;  // sorted by (X, Y)
  std::uint64_t pairs_tested = 0;
};

TargetedResult targeted(const TargetedQuery& query);

// Perfect-square test with residue prefilters; exact.
bool is_square_i128(__int128 v, __int128* root = nullptr);

}  // namespace quartic

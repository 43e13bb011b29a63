#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "quartic/exactnum.hpp"
#include "quartic/identity.hpp"

namespace quartic {

// Stable order; the numeric value is used as a sort key in stores.
enum class FamilyId { A1, B1, B2, A11, B11, B12, B13, B14, B15, B21 };

inline constexpr std::array<FamilyId, 10> kAllFamilies = {
    FamilyId::A1,  FamilyId::B1,  FamilyId::B2,  FamilyId::A11, FamilyId::B11,
    FamilyId::B12, FamilyId::B13, FamilyId::B14, FamilyId::B15, FamilyId::B21};

struct FamilyInfo {
  FamilyId id;
  std::string_view name;
  int tier;         // 1: two parameters (u, v); 2: one parameter u
  int param_count;
  std::string_view a_form;
  FamilyId parent;  // the tier-1 family this one nests in (itself for tier 1)
  int row;          // 1-based position within its tier
};

const std::vector<FamilyInfo>& families();
const FamilyInfo& family_info(FamilyId id);
std::string_view family_name(FamilyId id);
// Throws std::invalid_argument on unknown names.
FamilyId parse_family(std::string_view name);

struct Params {
  Rat u;
  std::optional<Rat> v;

  friend bool operator==(const Params&, const Params&) = default;
};

// Lexicographic by value: u first, then v (absent sorts first).
bool params_less(const Params& a, const Params& b);
BigInt max_height(const Params& p);

struct NestPoint {
  FamilyId family;
  Params params;
  Rat a;
  Rat p, q, r, s;
  Quartet quartet;  // coefficient a with assemble(p, q, r, s)
};

// Only the coefficient column. Throws MathError on a vanishing denominator
// or a parameter count mismatch.
Rat closed_form_a(FamilyId f, const Params& params);

bool domain_ok(FamilyId f, const Params& params);

// Throws MathError when !domain_ok. Throws std::logic_error if the identity
// fails, which would mean a broken transcription.
NestPoint eval(FamilyId f, const Params& params);

namespace formulas {

// Coefficient and generators written once for any field-like number type
// (Rat, SmallRat). B21 shares B11's formulas.
template <class T>
T coefficient(FamilyId f, const T& u, const T& v) {
  const T one(1);
  switch (f) {
    case FamilyId::A1:
      return (u - v) * (u * v + one) / ((u + v) * (u * v - one));
    case FamilyId::B1:
      return (u * u + v * v) / ((T(2) * v + T(3)) * u * u + one);
    case FamilyId::B2: {
      // Recovered from the generators below; see generators().
      T u2 = u * u, v2 = v * v;
      T num = u * (u - one) * (u2 + v2) * (v2 + one) * (u2 * v2 + one);
      T den = (v2 - one) * (u2 * v2 + T(2) * u * v2 + v2 * v2 - v2 + one);
      return num / den;
    }
    case FamilyId::A11:
      return u * u - T(3);
    case FamilyId::B11:
    case FamilyId::B21:
      return u * u - one;
    case FamilyId::B12:
    case FamilyId::B13:
      return u * u + T(2);
    case FamilyId::B14:
      return u * u + T(3);
    case FamilyId::B15:
      return u * u + T(9) / T(4);
  }
  throw MathError("unknown family");
}

// (p, q, r, s); `a` is the already computed coefficient.
template <class T>
std::array<T, 4> generators(FamilyId f, const T& u, const T& v, const T& a) {
  const T one(1);
  T u2 = u * u;
  switch (f) {
    case FamilyId::A1:
      return {u * v + one, u - v, u * v - one, u + v};
    case FamilyId::B1:
      return {u * (a * u2 + one), a * u2 - v, u * (a * u2 - v), u2 + one};
    case FamilyId::B2:
      return {u * (v * v + one), v * (u2 - one), v * (u + one), v * v - one};
    case FamilyId::A11:
      return {u * (u2 - T(3)), T(2) * (u2 - one), u * (u2 - one), T(2)};
    case FamilyId::B11:
    case FamilyId::B21: {
      T u4 = u2 * u2;
      return {u * (u4 - one), T(2) * u2 - one, u4 - u2 + one, u * (T(2) * u2 - one)};
    }
    case FamilyId::B12:
      return {u * (u2 + T(2)), one, u2 + one, u};
    case FamilyId::B13:
      return {u * (u2 + one), T(3) * (u2 + T(2)), u * (u2 + T(4)), T(3)};
    case FamilyId::B14:
      return {u * (u2 + one) * (u2 + T(3)), one, u2 * u2 + T(3) * u2 + one, u};
    case FamilyId::B15: {
      T w = u2 * u2 + T(9) / T(4) * u2;
      return {u * (w + one), w + T(3) / T(2), u * (w + T(3) / T(2)), u2 + one};
    }
  }
  throw MathError("unknown family");
}

}  // namespace formulas

}  // namespace quartic

#include "quartic/nests.hpp"

#include <stdexcept>

namespace quartic {

const std::vector<FamilyInfo>& families() {
  static const std::vector<FamilyInfo> table = {
      {FamilyId::A1, "A1", 1, 2, "(u - v)(uv + 1)/((u + v)(uv - 1))", FamilyId::A1, 1},
      {FamilyId::B1, "B1", 1, 2, "(u^2 + v^2)/((2v + 3)u^2 + 1)", FamilyId::B1, 2},
      {FamilyId::B2, "B2", 1, 2,
       "u(u - 1)(u^2 + v^2)(v^2 + 1)(u^2v^2 + 1)/((v^2 - 1)(u^2v^2 + 2uv^2 + v^4 - v^2 + 1))",
       FamilyId::B2, 3},
      {FamilyId::A11, "A11", 2, 1, "u^2 - 3", FamilyId::A1, 1},
      {FamilyId::B11, "B11", 2, 1, "u^2 - 1", FamilyId::B1, 2},
      {FamilyId::B12, "B12", 2, 1, "u^2 + 2", FamilyId::B1, 3},
      {FamilyId::B13, "B13", 2, 1, "u^2 + 2", FamilyId::B1, 4},
      {FamilyId::B14, "B14", 2, 1, "u^2 + 3", FamilyId::B1, 5},
      {FamilyId::B15, "B15", 2, 1, "u^2 + 9/4", FamilyId::B1, 6},
      {FamilyId::B21, "B21", 2, 1, "u^2 - 1", FamilyId::B2, 7},
  };
  return table;
}

const FamilyInfo& family_info(FamilyId id) { return families()[static_cast<std::size_t>(id)]; }

std::string_view family_name(FamilyId id) { return family_info(id).name; }

FamilyId parse_family(std::string_view name) {
  for (const auto& f : families())
    if (f.name == name) return f.id;
  throw std::invalid_argument("unknown family: " + std::string(name));
}

bool params_less(const Params& a, const Params& b) {
  if (a.u != b.u) return a.u < b.u;
  if (a.v.has_value() != b.v.has_value()) return !a.v.has_value();
  return a.v.has_value() && *a.v < *b.v;
}

BigInt max_height(const Params& p) {
  BigInt h = height(p.u);
  if (p.v) {
    BigInt hv = height(*p.v);
    if (hv > h) h = hv;
  }
  return h;
}

namespace {

void check_arity(FamilyId f, const Params& params) {
  bool two = family_info(f).param_count == 2;
  if (two != params.v.has_value())
    throw MathError(std::string(family_name(f)) + ": wrong number of parameters");
}

}  // namespace

Rat closed_form_a(FamilyId f, const Params& params) {
  check_arity(f, params);
  return formulas::coefficient<Rat>(f, params.u, params.v.value_or(Rat(0)));
}

bool domain_ok(FamilyId f, const Params& params) {
  try {
    check_arity(f, params);
    const Rat v = params.v.value_or(Rat(0));
    Rat a = formulas::coefficient<Rat>(f, params.u, v);
    if (a.is_zero()) return false;
    auto g = formulas::generators<Rat>(f, params.u, v, a);
    Terms t = assemble(g[0], g[1], g[2], g[3]);
    return t.B.abs() != t.D.abs();
  } catch (const MathError&) {
    return false;
  }
}

NestPoint eval(FamilyId f, const Params& params) {
  if (!domain_ok(f, params))
    throw MathError(std::string(family_name(f)) + ": parameters outside the family's domain");
  const Rat v = params.v.value_or(Rat(0));
  NestPoint pt{f, params, formulas::coefficient<Rat>(f, params.u, v), {}, {}, {}, {}, {}};
  auto g = formulas::generators<Rat>(f, params.u, v, pt.a);
  pt.p = g[0];
  pt.q = g[1];
  pt.r = g[2];
  pt.s = g[3];
  pt.quartet = Quartet{pt.a, assemble(pt.p, pt.q, pt.r, pt.s)};
  if (!residual(pt.quartet).is_zero() || recover_a(pt.quartet.terms) != pt.a)
    throw std::logic_error(std::string(family_name(f)) + ": identity check failed at u = " +
                           params.u.str());
  return pt;
}

}  // namespace quartic

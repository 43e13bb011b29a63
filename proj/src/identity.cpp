#include "quartic/identity.hpp"

namespace quartic {

namespace {

Rat fourth(const Rat& x) { return pow(x, 4); }

}  // namespace

Terms assemble(const Rat& p, const Rat& q, const Rat& r, const Rat& s) {
  return Terms{p + q, r - s, p - q, r + s};
}

Rat residual(const Rat& a, const Terms& t) {
  return fourth(t.A) + a * fourth(t.B) - fourth(t.C) - a * fourth(t.D);
}

Rat recover_a(const Terms& t) {
  Rat den = fourth(t.D) - fourth(t.B);
  if (den.is_zero()) throw MathError("recover_a: D^4 == B^4");
  return (fourth(t.A) - fourth(t.C)) / den;
}

bool is_trivial(const Quartet& s) {
  Rat A = s.terms.A.abs(), B = s.terms.B.abs();
  Rat C = s.terms.C.abs(), D = s.terms.D.abs();
  if (B == D) return true;
  if (A == C && B == D) return true;
  if (s.a == Rat(1) && A == D && B == C) return true;
  return false;
}

bool has_zero_component(const Terms& t) {
  return t.A.is_zero() || t.B.is_zero() || t.C.is_zero() || t.D.is_zero();
}

Quartet scale(const Quartet& s, const Rat& k) {
  if (k.is_zero()) throw MathError("scale: k is zero");
  const Terms& t = s.terms;
  return Quartet{s.a * fourth(k), Terms{k * t.A, t.B, k * t.C, t.D}};
}

Quartet invert(const Quartet& s) {
  if (s.a.is_zero()) throw MathError("invert: coefficient is zero");
  const Terms& t = s.terms;
  return Quartet{s.a.inverse(), Terms{t.B, t.A, t.D, t.C}};
}

Quartet negate(const Quartet& s) {
  const Terms& t = s.terms;
  return Quartet{-s.a, Terms{t.A, t.D, t.C, t.B}};
}

Quartet integerize(const Quartet& s) {
  const Terms& t = s.terms;
  BigInt l = 1;
  for (const Rat* x : {&t.A, &t.B, &t.C, &t.D}) l = lcm(l, x->den());
  BigInt g = 0;
  BigInt v[4];
  int i = 0;
  for (const Rat* x : {&t.A, &t.B, &t.C, &t.D}) {
    v[i] = x->num() * (l / x->den());
    g = gcd(g, v[i]);
    ++i;
  }
  if (g == 0) return s;
  for (auto& x : v) x /= g;
  return Quartet{s.a, Terms{Rat(v[0]), Rat(v[1]), Rat(v[2]), Rat(v[3])}};
}

bool check_req_A(const Rat& a, const Rat& x, const Rat& y, const Rat& t) {
  Rat den = pow(y, 3) - a * x;
  if (den.is_zero()) throw MathError("requirement (A): y^3 == a x");
  return (a * pow(x, 3) - y) / den == t * t;
}

Quartet solution_from_A(const Rat& a, const Rat& x, const Rat& y, const Rat& t, const Rat& q) {
  if (q.is_zero()) throw MathError("solution_from_A: q is zero");
  if (!check_req_A(a, x, y, t)) throw MathError("solution_from_A: point violates requirement (A)");
  Rat r = q * t;
  Rat s = q * x;
  Rat p = r * y;
  return Quartet{a, assemble(p, q, r, s)};
}

bool check_req_B(const Rat& a, const Rat& rho, const Rat& t, const Rat& omega) {
  Rat rho3 = pow(rho, 3);
  Rat t2 = t * t;
  Rat lhs = a * a * rho3 * t2 * t2 + (Rat(3) * a * rho * rho - Rat(1)) * t2 + a * rho3;
  return lhs == omega * omega;
}

std::pair<Rat, Rat> xy_from_B(const Rat& a, const Rat& rho, const Rat& t, const Rat& omega) {
  if (omega.is_zero()) throw MathError("xy_from_B: omega is zero");
  Rat t2 = t * t;
  return {(t2 + rho) / omega, (a * rho * t2 + Rat(1)) / omega};
}

}  // namespace quartic

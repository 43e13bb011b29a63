#pragma once

#include <utility>

#include "quartic/exactnum.hpp"

namespace quartic {

// The four quartic terms of A^4 + a B^4 = C^4 + a D^4.
struct Terms {
  Rat A, B, C, D;

  friend bool operator==(const Terms&, const Terms&) = default;
};

// A coefficient together with its terms. Stored quartets are expected to
// have residual() == 0; nothing in the type enforces it.
struct Quartet {
  Rat a;
  Terms terms;

  friend bool operator==(const Quartet&, const Quartet&) = default;
};

// A = p + q, B = r - s, C = p - q, D = r + s.
Terms assemble(const Rat& p, const Rat& q, const Rat& r, const Rat& s);

// A^4 + a B^4 - C^4 - a D^4, exactly.
Rat residual(const Rat& a, const Terms& t);
inline Rat residual(const Quartet& s) { return residual(s.a, s.terms); }

// (A^4 - C^4) / (D^4 - B^4). Throws MathError when D^4 == B^4.
Rat recover_a(const Terms& t);

// B^4 == D^4, (|A|,|B|) == (|C|,|D|), or a == 1 with {|A|,|B|} == {|C|,|D|}.
bool is_trivial(const Quartet& s);

bool has_zero_component(const Terms& t);

// Coefficient a k^4 with terms (kA, B, kC, D).
Quartet scale(const Quartet& s, const Rat& k);
// Coefficient 1/a with terms (B, A, D, C).
Quartet invert(const Quartet& s);
// Coefficient -a with terms (A, D, C, B).
Quartet negate(const Quartet& s);
// Clears denominators and removes the common gcd; coefficient unchanged.
Quartet integerize(const Quartet& s);

// (a x^3 - y) / (y^3 - a x) == t^2. Throws MathError when y^3 == a x.
bool check_req_A(const Rat& a, const Rat& x, const Rat& y, const Rat& t);

// Quartet built from a point on requirement (A) via r = q t, s = q x,
// p = r y. Throws MathError if the point is off the curve or q == 0.
Quartet solution_from_A(const Rat& a, const Rat& x, const Rat& y, const Rat& t,
                        const Rat& q = Rat(1));

// a^2 rho^3 t^4 + (3 a rho^2 - 1) t^2 + a rho^3 == omega^2.
bool check_req_B(const Rat& a, const Rat& rho, const Rat& t, const Rat& omega);

// x = (t^2 + rho)/omega, y = (a rho t^2 + 1)/omega. Throws when omega == 0.
std::pair<Rat, Rat> xy_from_B(const Rat& a, const Rat& rho, const Rat& t, const Rat& omega);

}  // namespace quartic

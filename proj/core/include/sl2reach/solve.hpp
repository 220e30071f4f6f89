#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "sl2reach/mat2.hpp"

namespace sl2reach {

// Point of the rational projective line.  den == 0 (with num == 1) encodes
// the point at infinity; finite values are canonical: den > 0 and
// gcd(|num|, den) == 1.
struct Rat {
  Int num, den;
  bool operator==(const Rat&) const = default;
  bool is_inf() const { return den == 0; }
};

Rat make_rat(Int num, Int den);  // normalizes; throws InputError on 0/0
Rat rat_inf();

// "p/q", "p", or "inf".  When `normalized` is given it is set when the text
// was not already canonical.
Rat parse_rat(std::string_view text, bool* normalized = nullptr);
std::string format_rat(const Rat& r);

Vec2 rat_to_vec(const Rat& r);  // inf -> (1, 0)

// Action on the projective line: x -> (a*x + b) / (c*x + d).
Rat mobius_apply(const Mat2& m, const Rat& x);

// The solutions M of M*x == y, when nonempty, form { t*a1 + a2 : t in Z }
// with det(a1) == 0, a1 != 0 and det(t*a1 + a2) == 1 for every t.
struct ParamFamily {
  Mat2 a1, a2;
};

struct Line {  // { left * T^t * right : t in Z }
  Mat2 left, right;
};

struct LinePair {
  Line first, second;
};

struct PowerLine {  // { left * T^(step*s) * right : s in Z }, step != 0
  Mat2 left;
  Int step;
  Mat2 right;
};

struct TwoParamLine {  // { left * T^(step*s) * mid * T^t * right : s, t in Z }
  Mat2 left;
  Int step;
  Mat2 mid, right;
};

struct EmptySet {};
struct AllSl2 {};

using SolutionSet = std::variant<EmptySet, AllSl2, Line, LinePair, TwoParamLine>;

// Requires x != 0.  Empty when the equation M*x == y has no SL(2,Z) solution
// (in particular whenever the entry gcds of x and y differ, including y == 0).
std::optional<ParamFamily> solve_linear_family(const Vec2& x, const Vec2& y);

// Rewrites a determinant-one family as a shear line through Smith reduction
// of its direction matrix.  Requires the ParamFamily invariants.
PowerLine normalize_family(const ParamFamily& f);

// normalize_family with the step collapsed to 1.  Families that arise as full
// solution sets of vector equations always have |step| == 1, so the returned
// Line denotes the same set.
Line family_to_line(const ParamFamily& f);

// Empty | All | Line.
SolutionSet solve_vector_equation(const Vec2& x, const Vec2& y);

// Solutions of the projective equation (matrices with m.x = y or m.x = -y):
// Empty | Line | LinePair; the pair keeps the plus-direction line first.
SolutionSet solve_flt_equation(const Rat& x, const Rat& y);

// Solutions M of [a, 1] * M * x == 1: Empty unless gcd(x1, x2) == 1,
// otherwise a TwoParamLine.
SolutionSet solve_scalar_special(const Int& a, const Vec2& x);

std::optional<Int> line_contains(const Line& line, const Mat2& m);
Mat2 line_member(const Line& line, const Int& t);
Mat2 power_line_member(const PowerLine& line, const Int& s);
Mat2 two_param_member(const TwoParamLine& line, const Int& s, const Int& t);

}  // namespace sl2reach

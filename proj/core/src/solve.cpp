#include "sl2reach/solve.hpp"

#include <stdexcept>
#include <utility>

#include "sl2reach/errors.hpp"
#include "sl2reach/integers.hpp"

namespace sl2reach {

namespace {

Int igcd(const Int& a, const Int& b) {
  Int g = boost::multiprecision::gcd(a, b);
  return g < 0 ? Int(-g) : g;
}

}  // namespace

Rat make_rat(Int num, Int den) {
  if (den == 0) {
    if (num == 0) throw InputError("make_rat: 0/0");
    return rat_inf();
  }
  Int g = igcd(num, den);
  num /= g;
  den /= g;
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return {std::move(num), std::move(den)};
}

Rat rat_inf() { return {1, 0}; }

std::string format_rat(const Rat& r) {
  if (r.is_inf()) return "inf";
  if (r.den == 1) return r.num.str();
  return r.num.str() + "/" + r.den.str();
}

Rat parse_rat(std::string_view text, bool* normalized) {
  Rat r;
  if (text == "inf") {
    r = rat_inf();
  } else if (auto slash = text.find('/'); slash != std::string_view::npos) {
    r = make_rat(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
  } else {
    r = {parse_int(text), 1};
  }
  if (normalized) *normalized = format_rat(r) != text;
  return r;
}

Vec2 rat_to_vec(const Rat& r) { return r.is_inf() ? Vec2{1, 0} : Vec2{r.num, r.den}; }

Rat mobius_apply(const Mat2& m, const Rat& x) {
  Vec2 v = m * rat_to_vec(x);
  return make_rat(v.x, v.y);
}

std::optional<ParamFamily> solve_linear_family(const Vec2& x, const Vec2& y) {
  if (x.is_zero()) throw InputError("solve_linear_family: x must be nonzero");
  if (y.is_zero()) return std::nullopt;

  // Rotate a zero leading entry away; undo the change of variables on the
  // family afterwards.
  if (x.x == 0) {
    auto inner = solve_linear_family(mat_s() * x, y);
    if (!inner) return std::nullopt;
    return ParamFamily{inner->a1 * mat_s(), inner->a2 * mat_s()};
  }
  if (y.x == 0) {
    Mat2 s_inv = mat_inverse_sl2(mat_s());
    auto inner = solve_linear_family(x, mat_s() * y);
    if (!inner) return std::nullopt;
    return ParamFamily{s_inv * inner->a1, s_inv * inner->a2};
  }

  // With m = [[a,b],[c,d]], eliminating a, d, c in turn from m*x == y and
  // det m == 1 leaves three divisibility conditions on b alone.
  std::vector<Congruence> system = {
      {x.y, y.x, x.x},
      {y.y, -x.x, y.x},
      {x.y * y.y, y.x * y.y - x.x * x.y, x.x * y.x},
  };
  auto cls = solve_congruence_system(system);
  if (!cls) return std::nullopt;
  const Int& b1 = cls->m;
  const Int& b2 = cls->c;

  Int xy = x.x * y.x;
  Mat2 a1{-x.y * b1 / x.x, b1, -x.y * y.y * b1 / xy, y.y * b1 / y.x};
  Mat2 a2{(y.x - x.y * b2) / x.x, b2, (y.x * y.y - x.x * x.y - x.y * y.y * b2) / xy,
          (x.x + y.y * b2) / y.x};

  if (!(a1 * x).is_zero() || a2 * x != y || a1.det() != 0 || a2.det() != 1 ||
      (a1 + a2).det() != 1)
    throw std::logic_error("solve_linear_family: family reconstruction failed");
  return ParamFamily{std::move(a1), std::move(a2)};
}

PowerLine normalize_family(const ParamFamily& f) {
  if (f.a1.is_zero() || f.a1.det() != 0 || f.a2.det() != 1 || (f.a1 + f.a2).det() != 1)
    throw InputError("normalize_family: not a determinant-one family");

  SmithForm sf = smith_normal_form(f.a1);
  Mat2 n = mat_inverse_sl2(sf.left) * f.a2 * mat_inverse_sl2(sf.right);
  if (sf.d2 != 0 || n.d != 0 || n.b * n.c != -1)
    throw std::logic_error("normalize_family: direction matrix did not reduce");

  Mat2 d{0, n.b, n.c, 0};
  PowerLine line{sf.left, n.c * sf.d1, mat_t_power(n.c * n.a) * (d * sf.right)};
  return line;
}

Line family_to_line(const ParamFamily& f) {
  PowerLine p = normalize_family(f);
  return {std::move(p.left), std::move(p.right)};
}

SolutionSet solve_vector_equation(const Vec2& x, const Vec2& y) {
  if (x.is_zero()) {
    if (y.is_zero()) return AllSl2{};
    return EmptySet{};
  }
  auto fam = solve_linear_family(x, y);
  if (!fam) return EmptySet{};
  return family_to_line(*fam);
}

SolutionSet solve_flt_equation(const Rat& x, const Rat& y) {
  Vec2 vx = rat_to_vec(x.is_inf() ? rat_inf() : make_rat(x.num, x.den));
  Vec2 vy = rat_to_vec(y.is_inf() ? rat_inf() : make_rat(y.num, y.den));
  // Both vectors are primitive, so each direction admits solutions.
  auto plus = solve_linear_family(vx, vy);
  auto minus = solve_linear_family(vx, -vy);
  if (!plus || !minus) throw std::logic_error("solve_flt_equation: primitive family missing");
  return LinePair{family_to_line(*plus), family_to_line(*minus)};
}

SolutionSet solve_scalar_special(const Int& a, const Vec2& x) {
  ExtGcd e = ext_gcd(x.x, x.y);
  if (e.g != 1) return EmptySet{};

  // Row condition [a,1]*m*x == 1 says the second entry of (w*m)*x is 1 for
  // w = [[1,0],[a,1]]; pulling x to (1,0) by c and peeling the resulting
  // first-column shape gives w^-1 * T^s * S * T^t * c.
  Mat2 w_inv{1, 0, -a, 1};
  Mat2 c{e.u, e.v, -x.y, x.x};
  return TwoParamLine{w_inv, 1, mat_s(), c};
}

std::optional<Int> line_contains(const Line& line, const Mat2& m) {
  Mat2 q = mat_inverse_sl2(line.left) * (m * mat_inverse_sl2(line.right));
  if (q.a == 1 && q.d == 1 && q.c == 0) return q.b;
  return std::nullopt;
}

Mat2 line_member(const Line& line, const Int& t) {
  return line.left * (mat_t_power(t) * line.right);
}

Mat2 power_line_member(const PowerLine& line, const Int& s) {
  return line.left * (mat_t_power(line.step * s) * line.right);
}

Mat2 two_param_member(const TwoParamLine& line, const Int& s, const Int& t) {
  return line.left * (mat_t_power(line.step * s) * (line.mid * (mat_t_power(t) * line.right)));
}

}  // namespace sl2reach

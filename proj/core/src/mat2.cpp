#include "sl2reach/mat2.hpp"

#include <stdexcept>
#include <tuple>

#include "sl2reach/errors.hpp"

namespace sl2reach {

Mat2 operator*(const Mat2& lhs, const Mat2& rhs) {
  return {lhs.a * rhs.a + lhs.b * rhs.c, lhs.a * rhs.b + lhs.b * rhs.d,
          lhs.c * rhs.a + lhs.d * rhs.c, lhs.c * rhs.b + lhs.d * rhs.d};
}

Mat2 operator+(const Mat2& lhs, const Mat2& rhs) {
  return {lhs.a + rhs.a, lhs.b + rhs.b, lhs.c + rhs.c, lhs.d + rhs.d};
}

Mat2 operator*(const Int& scalar, const Mat2& m) {
  return {scalar * m.a, scalar * m.b, scalar * m.c, scalar * m.d};
}

Vec2 operator*(const Mat2& m, const Vec2& v) {
  return {m.a * v.x + m.b * v.y, m.c * v.x + m.d * v.y};
}

bool operator<(const Mat2& lhs, const Mat2& rhs) {
  return std::tie(lhs.a, lhs.b, lhs.c, lhs.d) < std::tie(rhs.a, rhs.b, rhs.c, rhs.d);
}

Mat2 mat_identity() { return {1, 0, 0, 1}; }
Mat2 mat_s() { return {0, -1, 1, 0}; }
Mat2 mat_r() { return {0, -1, 1, 1}; }
Mat2 mat_t() { return {1, 1, 0, 1}; }
Mat2 mat_t_power(const Int& k) { return {1, k, 0, 1}; }

Mat2 mat_inverse_sl2(const Mat2& m) {
  if (!m.is_sl2()) throw InputError("mat_inverse_sl2: determinant is not one");
  return {m.d, -m.b, -m.c, m.a};
}

Mat2 mat_power(const Mat2& m, const Int& e) {
  Mat2 base = m;
  Int k = e;
  if (k < 0) {
    base = mat_inverse_sl2(m);
    k = -k;
  }
  Mat2 acc = mat_identity();
  while (k > 0) {
    if ((k & 1) != 0) acc = acc * base;
    base = base * base;
    k >>= 1;
  }
  return acc;
}

namespace {

// Row transform with determinant one taking the first column to (g, 0).
void clear_first_column(Mat2& d, Mat2& left) {
  if (d.c == 0) return;
  auto [g, u, v] = ext_gcd(d.a, d.c);
  Mat2 l{u, v, -d.c / g, d.a / g};
  left = left * mat_inverse_sl2(l);
  d = l * d;
}

// Column transform with determinant one taking the first row to (g, 0); may
// reintroduce a nonzero lower-left entry.
void clear_first_row(Mat2& d, Mat2& right) {
  if (d.b == 0) return;
  auto [g, u, v] = ext_gcd(d.a, d.b);
  Mat2 r{u, -d.b / g, v, d.a / g};
  right = mat_inverse_sl2(r) * right;
  d = d * r;
}

}  // namespace

SmithForm smith_normal_form(const Mat2& m) {
  if (m.is_zero()) throw InputError("smith_normal_form: zero matrix");
  Mat2 left = mat_identity(), right = mat_identity(), d = m;

  if (d.a == 0 && d.c == 0) {
    // rotate the nonzero column into front
    Mat2 rot{0, -1, 1, 0};
    right = mat_inverse_sl2(rot) * right;
    d = d * rot;
  }

  for (;;) {
    while (true) {
      clear_first_column(d, left);
      if (d.b % d.a == 0) {
        Int q = d.b / d.a;
        Mat2 shear{1, -q, 0, 1};
        right = mat_inverse_sl2(shear) * right;
        d = d * shear;
        break;
      }
      clear_first_row(d, right);
    }
    // d is diag(d.a, d.d); restart with col2 folded in unless d.a divides d.d
    if (d.d % d.a == 0) break;
    Mat2 fold{1, 0, 1, 1};
    right = mat_inverse_sl2(fold) * right;
    d = d * fold;
  }

  if (d.a < 0) {
    left = -left;
    d = -d;
  }

  SmithForm out{left, d.a, d.d, right};
  if (out.left * Mat2{out.d1, 0, 0, out.d2} * out.right != m || !out.left.is_sl2() ||
      !out.right.is_sl2())
    throw std::logic_error("smith_normal_form: reconstruction failed");
  return out;
}

}  // namespace sl2reach

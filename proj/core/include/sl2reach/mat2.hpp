#pragma once

#include "sl2reach/bigint.hpp"
#include "sl2reach/integers.hpp"

namespace sl2reach {

struct Vec2 {
  Int x, y;
  bool operator==(const Vec2&) const = default;
  bool is_zero() const { return x == 0 && y == 0; }
  Vec2 operator-() const { return {-x, -y}; }
};

// Row-major [[a, b], [c, d]].
struct Mat2 {
  Int a, b, c, d;
  bool operator==(const Mat2&) const = default;
  Int det() const { return a * d - b * c; }
  bool is_sl2() const { return det() == 1; }
  bool is_zero() const { return a == 0 && b == 0 && c == 0 && d == 0; }
  Mat2 operator-() const { return {-a, -b, -c, -d}; }
};

Mat2 operator*(const Mat2& lhs, const Mat2& rhs);
Mat2 operator+(const Mat2& lhs, const Mat2& rhs);
Mat2 operator*(const Int& scalar, const Mat2& m);
Vec2 operator*(const Mat2& m, const Vec2& v);
bool operator<(const Mat2& lhs, const Mat2& rhs);  // entry-lexicographic, for ordered containers

Mat2 mat_identity();
Mat2 mat_s();  // [[0,-1],[1,0]]: rotation of order four
Mat2 mat_r();  // [[0,-1],[1,1]]: order six
Mat2 mat_t();  // [[1,1],[0,1]]: the shear
Mat2 mat_t_power(const Int& k);

// Requires det == 1.
Mat2 mat_inverse_sl2(const Mat2& m);

// Requires det == 1 when e < 0.
Mat2 mat_power(const Mat2& m, const Int& e);

// A == left * diag(d1, d2) * right with det(left) == det(right) == 1 (exactly,
// not just +-1), d1 != 0, d1 | d2, |d1| = gcd of the entries of A, and
// d1 * d2 == det(A).  Requires A != 0.
struct SmithForm {
  Mat2 left;
  Int d1, d2;
  Mat2 right;
};

SmithForm smith_normal_form(const Mat2& m);

}  // namespace sl2reach

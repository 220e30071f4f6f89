#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "sl2reach/bigint.hpp"

namespace sl2reach {

// g = gcd(a, b) >= 0 and g == u*a + v*b.  ext_gcd(0, 0) = {0, 0, 0}.
struct ExtGcd {
  Int g, u, v;
};

ExtGcd ext_gcd(const Int& a, const Int& b);

// Quotient rounded toward minus infinity; b != 0.
Int floor_div(const Int& a, const Int& b);

// Representative of a mod m in [0, m); m > 0.
Int mod_floor(const Int& a, const Int& m);

Int parse_int(std::string_view text);

// a*x = b (mod n).  n may be negative (normalized to |n|); n == 0 encodes the
// exact equation a*x = b.
struct Congruence {
  Int a, b, n;
};

// The set { c + m*k : k in Z }.  m == 0 encodes the single integer c, m == 1
// all integers.  Canonical: m >= 0, and 0 <= c < m whenever m > 0.
struct ResidueClass {
  Int c, m;
  bool operator==(const ResidueClass&) const = default;
  bool contains(const Int& value) const;
};

// Empty result means no solution.
std::optional<ResidueClass> solve_congruence(const Congruence& eq);
std::optional<ResidueClass> intersect(const ResidueClass& lhs, const ResidueClass& rhs);

// Solves each congruence and intersects left to right.  The empty system
// yields all integers.
std::optional<ResidueClass> solve_congruence_system(const std::vector<Congruence>& eqs);

}  // namespace sl2reach

#include "sl2reach/integers.hpp"

#include <utility>

#include "sl2reach/errors.hpp"

namespace sl2reach {

ExtGcd ext_gcd(const Int& a, const Int& b) {
  if (a == 0 && b == 0) return {0, 0, 0};
  Int old_r = a, r = b;
  Int old_u = 1, u = 0;
  Int old_v = 0, v = 1;
  while (r != 0) {
    Int q = old_r / r;
    old_r -= q * r;
    std::swap(old_r, r);
    old_u -= q * u;
    std::swap(old_u, u);
    old_v -= q * v;
    std::swap(old_v, v);
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_u = -old_u;
    old_v = -old_v;
  }
  return {std::move(old_r), std::move(old_u), std::move(old_v)};
}

Int floor_div(const Int& a, const Int& b) {
  if (b == 0) throw InputError("floor_div: division by zero");
  Int q = a / b;
  if ((a % b) != 0 && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

Int mod_floor(const Int& a, const Int& m) {
  if (m <= 0) throw InputError("mod_floor: modulus must be positive");
  Int r = a % m;
  if (r < 0) r += m;
  return r;
}

Int parse_int(std::string_view text) {
  if (text.empty()) throw InputError("empty integer literal");
  std::size_t i = text[0] == '-' || text[0] == '+' ? 1 : 0;
  if (i == text.size()) throw InputError("sign without digits in integer literal");
  for (std::size_t k = i; k < text.size(); ++k)
    if (text[k] < '0' || text[k] > '9')
      throw InputError("invalid integer literal: " + std::string(text));
  return Int(std::string(text));
}

bool ResidueClass::contains(const Int& value) const {
  if (m == 0) return value == c;
  return mod_floor(value, m) == c;
}

std::optional<ResidueClass> solve_congruence(const Congruence& eq) {
  Int n = eq.n < 0 ? Int(-eq.n) : eq.n;
  if (n == 0) {
    // exact equation a*x == b
    if (eq.a == 0) {
      if (eq.b != 0) return std::nullopt;
      return ResidueClass{0, 1};
    }
    if (eq.b % eq.a != 0) return std::nullopt;
    return ResidueClass{eq.b / eq.a, 0};
  }
  auto [g, u, v] = ext_gcd(eq.a, n);
  if (eq.b % g != 0) return std::nullopt;
  Int n1 = n / g;
  return ResidueClass{mod_floor(u * (eq.b / g), n1), n1};
}

std::optional<ResidueClass> intersect(const ResidueClass& lhs, const ResidueClass& rhs) {
  if (lhs.m == 0) return rhs.contains(lhs.c) ? std::optional(lhs) : std::nullopt;
  if (rhs.m == 0) return lhs.contains(rhs.c) ? std::optional(rhs) : std::nullopt;
  auto [g, u, v] = ext_gcd(lhs.m, rhs.m);
  Int diff = rhs.c - lhs.c;
  if (diff % g != 0) return std::nullopt;
  Int m2 = rhs.m / g;
  Int lcm = lhs.m * m2;
  // u * (lhs.m / g) == 1 (mod m2), so lhs.c + lhs.m * k hits rhs for this k
  Int k = mod_floor((diff / g) * u, m2);
  return ResidueClass{mod_floor(lhs.c + lhs.m * k, lcm), lcm};
}

std::optional<ResidueClass> solve_congruence_system(const std::vector<Congruence>& eqs) {
  ResidueClass acc{0, 1};
  for (const auto& eq : eqs) {
    auto one = solve_congruence(eq);
    if (!one) return std::nullopt;
    auto merged = intersect(acc, *one);
    if (!merged) return std::nullopt;
    acc = *merged;
  }
  return acc;
}

}  // namespace sl2reach

#pragma once

#include <span>

#include "sl2reach/automata.hpp"

namespace sl2reach {

struct DecisionStats {
  std::size_t saturation_edges = 0;
  std::size_t product_states = 0;
};

struct PowerExponents {
  std::vector<Int> left;   // one per matrix on the left-hand side
  std::vector<Int> right;  // one per matrix on the right-hand side
};

struct Verdict {
  bool reachable = false;
  std::optional<Witness> witness;
  std::optional<PowerExponents> exponents;  // power equations only
  DecisionStats stats;
};

struct ReachOptions {
  bool include_identity = true;  // decide for the generated monoid; false: products of length >= 1
  bool want_factorization = true;
  std::size_t word_budget = 0;  // letters per synthesized word, 0 = unbounded
  std::size_t node_budget = 0;  // product-state cap, 0 = unbounded
};

enum class ExponentMode { non_negative, any_integer };

// Is some product of the generators a matrix M with M*x == y?
// Witnesses are re-verified before returning: the matrix maps x to y, and the
// factorization (when requested) multiplies back to the matrix.
Verdict decide_vector(std::span<const Mat2> gens, const Vec2& x, const Vec2& y,
                      const ReachOptions& opts = {});

// Same for the projective action: f_M(x) == y.
Verdict decide_flt(std::span<const Mat2> gens, const Rat& x, const Rat& y,
                   const ReachOptions& opts = {});

// Same for [a, 1] * M * x == 1.
Verdict decide_scalar_special(std::span<const Mat2> gens, const Int& a, const Vec2& x,
                              const ReachOptions& opts = {});

// Vector reachability restricted to products whose generator-index sequence
// lies in the constraint language (constraint.alphabet_size must equal the
// generator count).
Verdict decide_constrained(std::span<const Mat2> gens, const IndexNfa& constraint, const Vec2& x,
                           const Vec2& y, const ReachOptions& opts = {});

// Solvability of  ms[0]^e0 * ... * ms[k-1]^e(k-1) * x == ns[0]^f0 * ... * y
// over exponents in N (non_negative) or Z (any_integer); exponents of a
// witness are reported per block.  include_identity is ignored (all-zero
// exponents are always admitted by the equation itself).
Verdict decide_power_equation(std::span<const Mat2> ms, std::span<const Mat2> ns, const Vec2& x,
                              const Vec2& y, ExponentMode mode, const ReachOptions& opts = {});

}  // namespace sl2reach

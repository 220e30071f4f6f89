#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "sl2reach/mat2.hpp"

namespace sl2reach {

// Words over the alphabet {S, R}, stored as strings of 'S'/'R'.  The two
// letters evaluate to mat_s() and mat_r(), whose products cover all of
// SL(2,Z); the empty word evaluates to the identity.

enum class Sign : int { plus = 1, minus = -1 };

constexpr Sign flip(Sign s) { return s == Sign::plus ? Sign::minus : Sign::plus; }
constexpr Sign operator*(Sign a, Sign b) { return a == b ? Sign::plus : Sign::minus; }
constexpr char sign_char(Sign s) { return s == Sign::plus ? '+' : '-'; }

Mat2 operator*(Sign s, const Mat2& m);

struct SignedWord {
  std::string word;
  Sign sign = Sign::plus;
  bool operator==(const SignedWord&) const = default;
};

bool is_valid_word(std::string_view w);

// Left-to-right product of the letter matrices; throws InputError on letters
// outside {S, R}.
Mat2 eval_phi(std::string_view w);

// Deletes SS and RRR factors until none remain, flipping the sign once per
// deletion:  eval_phi(w) == sign * eval_phi(word).  Single left-to-right
// stack pass; the result is the unique reduced word for ±eval_phi(w).
SignedWord reduce(std::string_view w);

// Spelling of the shear power:  (SSSR)^k for k >= 0, (RRRRRS)^(-k) otherwise.
// eval_phi(t_power_word(k)) == mat_t_power(k) exactly.
std::string t_power_word(const Int& k);

// A word w with eval_phi(w) == m, exactly (sign included), in canonical form:
// the reduced word of m, plus an "SS" suffix when the reduced word evaluates
// to -m.  Works by peeling shear-power/rotation factors off the left with
// floor-division quotients, so the loop is logarithmic in the entries, but
// the emitted word is linear in their magnitude.  The overload with a budget
// throws BudgetError before materializing more than `letter_budget` letters.
std::string synthesize(const Mat2& m);
std::string synthesize(const Mat2& m, std::size_t letter_budget);

}  // namespace sl2reach

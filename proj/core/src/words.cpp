#include "sl2reach/words.hpp"

#include <vector>

#include "sl2reach/errors.hpp"

namespace sl2reach {

Mat2 operator*(Sign s, const Mat2& m) { return s == Sign::plus ? m : -m; }

bool is_valid_word(std::string_view w) {
  for (char ch : w)
    if (ch != 'S' && ch != 'R') return false;
  return true;
}

Mat2 eval_phi(std::string_view w) {
  Mat2 m = mat_identity();
  for (char ch : w) {
    switch (ch) {
      case 'S':
        m = m * mat_s();
        break;
      case 'R':
        m = m * mat_r();
        break;
      default:
        throw InputError("eval_phi: letters must be 'S' or 'R'");
    }
  }
  return m;
}

SignedWord reduce(std::string_view w) {
  if (!is_valid_word(w)) throw InputError("reduce: letters must be 'S' or 'R'");
  std::string out;
  out.reserve(w.size());
  Sign sign = Sign::plus;
  for (char ch : w) {
    out.push_back(ch);
    std::size_t n = out.size();
    if (ch == 'S' && n >= 2 && out[n - 2] == 'S') {
      out.resize(n - 2);
      sign = flip(sign);
    } else if (ch == 'R' && n >= 3 && out[n - 2] == 'R' && out[n - 3] == 'R') {
      out.resize(n - 3);
      sign = flip(sign);
    }
  }
  return {std::move(out), sign};
}

std::string t_power_word(const Int& k) {
  std::string out;
  if (k >= 0) {
    for (Int i = 0; i < k; ++i) out += "SSSR";
  } else {
    for (Int i = 0; i < -k; ++i) out += "RRRRRS";
  }
  return out;
}

namespace {

Int t_power_letters(const Int& k) { return k >= 0 ? 4 * k : -6 * k; }

std::string synthesize_impl(const Mat2& m, const std::size_t* budget) {
  if (!m.is_sl2()) throw InputError("synthesize: matrix is not in SL(2,Z)");

  // Peel T^q * S off the left until the lower-left entry vanishes;
  // floor-division quotients shrink it like a gcd computation.
  std::vector<Int> quotients;
  Mat2 cur = m;
  const Mat2 s_inv = mat_inverse_sl2(mat_s());
  while (cur.c != 0) {
    Int q = floor_div(cur.a, cur.c);
    cur = s_inv * (mat_t_power(-q) * cur);
    quotients.push_back(std::move(q));
  }
  // cur == T^b or -T^(-b) for b = cur.b
  bool negated = cur.a == -1;
  Int tail = negated ? Int(-cur.b) : cur.b;

  if (budget) {
    Int letters = t_power_letters(tail) + (negated ? 2 : 0);
    for (const Int& q : quotients) letters += t_power_letters(q) + 1;
    if (letters > *budget)
      throw BudgetError("synthesize: word needs " + letters.str() + " letters, budget is " +
                        std::to_string(*budget));
  }

  std::string word;
  for (const Int& q : quotients) {
    word += t_power_word(q);
    word += 'S';
  }
  word += t_power_word(tail);
  if (negated) word += "SS";

  SignedWord r = reduce(word);
  if (r.sign == Sign::minus) r.word += "SS";
  return std::move(r.word);
}

}  // namespace

std::string synthesize(const Mat2& m) { return synthesize_impl(m, nullptr); }

std::string synthesize(const Mat2& m, std::size_t letter_budget) {
  return synthesize_impl(m, &letter_budget);
}

}  // namespace sl2reach

#pragma once

#include <stdexcept>

namespace sl2reach {

// Rejected problem data: malformed documents, matrices outside SL(2,Z),
// alphabet mismatches, words over the wrong letters.
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A configured word-length or search budget ran out before the decision
// completed.  Never used to report an answer.
struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace sl2reach

#pragma once

#include <functional>
#include <optional>
#include <span>

#include "sl2reach/automata.hpp"

namespace sl2reach {

struct SearchConfig {
  int max_depth = 8;                       // product length
  std::optional<Int> max_entry_magnitude;  // prune larger intermediate entries
  bool dedupe = true;                      // skip matrices already seen
  std::size_t node_budget = 0;             // explored products, 0 = unbounded
};

using MatrixPredicate = std::function<bool(const Mat2&)>;

// Bounded breadth-first enumeration of generator products (identity first,
// then by length, ties by lexicographically least index sequence).  Returns
// the first product satisfying the predicate; an empty result only means the
// bounded space was exhausted, never unreachability.  Entry pruning can hide
// witnesses whose intermediate products grow past the bound.
std::optional<Witness> bfs_search(std::span<const Mat2> gens, const MatrixPredicate& pred,
                                  const SearchConfig& cfg = {});

// Same search restricted to index sequences accepted by the constraint.
std::optional<Witness> bfs_search_constrained(std::span<const Mat2> gens,
                                              const IndexNfa& constraint,
                                              const MatrixPredicate& pred,
                                              const SearchConfig& cfg = {});

}  // namespace sl2reach

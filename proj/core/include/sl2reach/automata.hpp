#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sl2reach/solve.hpp"
#include "sl2reach/words.hpp"

namespace sl2reach {

enum class Label : std::uint8_t { s, r, eps };

// Marks an edge that belongs to a substituted generator word; `completes` is
// set on the edge that finishes the factor.
struct FactorTag {
  int generator = 0;  // 1-based
  bool completes = false;
};

// NFA over {S, R} with eps moves and signed acceptance: a word w accepted at
// an fplus state denotes +eval_phi(w), at an fminus state -eval_phi(w).  A
// state may appear in both sets.
struct SignedNfa {
  struct Transition {
    int from = 0;
    Label label = Label::eps;
    int to = 0;
    std::optional<FactorTag> tag;
    std::optional<std::size_t> source;  // base edge id, set on copies made by saturate()
  };

  int num_states = 0;
  std::vector<Transition> transitions;
  std::vector<int> initial, fplus, fminus;

  int add_state() { return num_states++; }
  std::size_t add_transition(int from, Label label, int to);
  bool accepts(std::string_view word, Sign sign) const;
};

// NFA over generator indices 1..alphabet_size; symbol 0 is eps.
struct IndexNfa {
  struct Transition {
    int from = 0, symbol = 0, to = 0;
  };

  int num_states = 0;
  int alphabet_size = 0;
  std::vector<Transition> transitions;
  std::vector<int> initial, finals;

  int add_state() { return num_states++; }
  void add_transition(int from, int symbol, int to) { transitions.push_back({from, symbol, to}); }
  bool accepts(std::span<const int> symbols) const;
};

// Shortest accepted symbol sequence (ties broken by ascending symbols), or
// nothing when the language is empty.
std::optional<std::vector<int>> shortest_accepted(const IndexNfa& nfa);

// Language u (SSSR)* v + u (RRRRRS)* v for u, v the canonical words of the
// line's endpoints; its image is exactly { left * T^t * right : t in Z }.
// word_budget > 0 bounds each synthesized word (BudgetError beyond).
SignedNfa line_to_automaton(const Line& line, std::size_t word_budget = 0);

// Same block structure with both shear directions around the middle factor:
// image { left * T^(step*s) * mid * T^t * right : s, t in Z }.
SignedNfa two_param_to_automaton(const TwoParamLine& line, std::size_t word_budget = 0);

// Disjoint union.
SignedNfa nfa_union(const SignedNfa& a, const SignedNfa& b);

// Flower automaton of the generated monoid: one hub, one petal per generator
// spelling its canonical word.  include_identity = false drops the empty
// word (products of length >= 1 only).
SignedNfa semigroup_automaton(std::span<const Mat2> generators, bool include_identity = true,
                              std::size_t word_budget = 0);

// Replaces every symbol edge of `shape` by a fresh path spelling the
// generator's word (tagged with the generator index); eps edges are copied.
SignedNfa substitute_words(const IndexNfa& shape, std::span<const std::string> words);

// Saturation doubles states into sign layers (2q = plus, 2q+1 = minus),
// copies every edge onto both layers, and adds an eps edge u -> flip(v) for
// every run from u to v whose letters spell SS or RRR (eps moves may
// interleave), iterated to a fixpoint.  Provenance maps each added edge to
// the run it bridges, recorded against edges that existed before it.
using Provenance = std::unordered_map<std::size_t, std::vector<std::size_t>>;

struct SaturationOptions {
  bool record_provenance = false;
};

struct Saturation {
  SignedNfa nfa;
  Provenance provenance;
  std::size_t added_edges = 0;
};

Saturation saturate(const SignedNfa& base, const SaturationOptions& opts = {});

struct Witness {
  std::string reduced_word;
  Sign sign = Sign::plus;
  Mat2 matrix;
  std::optional<std::vector<int>> factorization;  // 1-based generator indices
};

struct SignedWordHit {
  std::string word;
  Sign sign = Sign::plus;
};

struct IntersectOptions {
  bool want_runs = false;
  std::size_t node_budget = 0;  // product states, 0 = unbounded
  SaturationOptions saturation;
};

struct IntersectResult {
  std::optional<SignedWordHit> hit;
  std::vector<std::size_t> run_left, run_right;  // edge ids into the saturated automata
  Saturation left, right;
  std::size_t product_states = 0;
};

// Decides whether the signed images intersect, via the product of the two
// saturated automata, and returns the shortest witness word (breadth first,
// 'R' expanded before 'S', plus class preferred on ties).  The shortest
// witness across both classes is automatically a reduced word.
IntersectResult decide_intersection(const SignedNfa& a, const SignedNfa& b,
                                    const IntersectOptions& opts = {});

// Edge-id path of an accepting run for `word` in the given sign class, found
// breadth first; empty result when the word is not accepted.
std::optional<std::vector<std::size_t>> find_accepting_run(const SignedNfa& nfa,
                                                           std::string_view word, Sign sign);

// Rewrites a run of a saturated automaton into base-automaton edge ids by
// recursively replacing saturation edges with their recorded runs.  Requires
// provenance to have been recorded.
std::vector<std::size_t> expand_run(const Saturation& sat, std::span<const std::size_t> run);

// expand_run + factor extraction: reads the generator indices off the factor
// tags of the expanded base run (checking contiguity on the way).
std::vector<int> expand_witness(const SignedNfa& base, const Saturation& sat,
                                std::span<const std::size_t> run);

// Line-based text format: sections `states`, `initial`, `fplus`, `fminus`
// (resp. `final` for index automata) and `trans from label to`, with labels
// "S", "R", "eps" (resp. "1".."n", "eps").  '#' starts a comment.
std::string format_signed_nfa(const SignedNfa& nfa);
SignedNfa parse_signed_nfa(std::string_view text);
std::string format_index_nfa(const IndexNfa& nfa);
IndexNfa parse_index_nfa(std::string_view text, int alphabet_size);

// Expressions over generator indices with concatenation, '|', '*' and
// parentheses, e.g. "(1|2)* 3".  Compiled to an IndexNfa with eps moves.
IndexNfa compile_index_expression(std::string_view expr, int alphabet_size);

}  // namespace sl2reach

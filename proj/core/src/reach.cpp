#include "sl2reach/reach.hpp"

#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "sl2reach/errors.hpp"

namespace sl2reach {

namespace {

std::string synth_word(const Mat2& m, std::size_t word_budget) {
  return word_budget ? synthesize(m, word_budget) : synthesize(m);
}

Mat2 product_of(std::span<const Mat2> gens, std::span<const int> factors) {
  Mat2 p = mat_identity();
  for (int f : factors) {
    if (f < 1 || static_cast<std::size_t>(f) > gens.size())
      throw std::logic_error("factor index out of range");
    p = p * gens[f - 1];
  }
  return p;
}

Witness witness_for(const Mat2& m, std::size_t word_budget) {
  SignedWord r = reduce(synth_word(m, word_budget));
  return {std::move(r.word), r.sign, m, std::nullopt};
}

// Intersects the solution-set automaton with the products automaton and
// packages the verdict; every reported fact is re-checked first.
Verdict intersect_route(const SignedNfa& solution, const SignedNfa& products,
                        std::span<const Mat2> gens, const ReachOptions& opts,
                        const std::function<bool(const Mat2&)>& satisfies,
                        const IndexNfa* constraint) {
  IntersectOptions io;
  io.want_runs = opts.want_factorization;
  io.node_budget = opts.node_budget;
  IntersectResult res = decide_intersection(solution, products, io);

  Verdict v;
  v.stats.saturation_edges = res.left.added_edges + res.right.added_edges;
  v.stats.product_states = res.product_states;
  if (!res.hit) return v;

  SignedWord check = reduce(res.hit->word);
  if (check.word != res.hit->word || check.sign != Sign::plus)
    throw std::logic_error("intersect_route: witness word is not reduced");

  Witness w;
  w.reduced_word = res.hit->word;
  w.sign = res.hit->sign;
  w.matrix = w.sign * eval_phi(w.reduced_word);
  if (!satisfies(w.matrix)) throw std::logic_error("intersect_route: witness fails the equation");
  if (opts.want_factorization) {
    std::vector<int> factors = expand_witness(products, res.right, res.run_right);
    if (product_of(gens, factors) != w.matrix)
      throw std::logic_error("intersect_route: factorization does not multiply back");
    if (constraint && !constraint->accepts(factors))
      throw std::logic_error("intersect_route: factorization escapes the constraint");
    w.factorization = std::move(factors);
  }
  v.reachable = true;
  v.witness = std::move(w);
  return v;
}

// x == 0 == y: every product works; pick the cheapest admissible one.
Verdict all_of_sl2(std::span<const Mat2> gens, const ReachOptions& opts) {
  Verdict v;
  if (opts.include_identity) {
    v.reachable = true;
    Witness w{"", Sign::plus, mat_identity(), std::nullopt};
    if (opts.want_factorization) w.factorization = std::vector<int>{};
    v.witness = std::move(w);
  } else if (!gens.empty()) {
    v.reachable = true;
    Witness w = witness_for(gens[0], opts.word_budget);
    if (opts.want_factorization) w.factorization = std::vector<int>{1};
    v.witness = std::move(w);
  }
  return v;
}

}  // namespace

Verdict decide_vector(std::span<const Mat2> gens, const Vec2& x, const Vec2& y,
                      const ReachOptions& opts) {
  SolutionSet sol = solve_vector_equation(x, y);
  if (std::holds_alternative<EmptySet>(sol)) return {};
  if (std::holds_alternative<AllSl2>(sol)) return all_of_sl2(gens, opts);

  SignedNfa solution = line_to_automaton(std::get<Line>(sol), opts.word_budget);
  SignedNfa products = semigroup_automaton(gens, opts.include_identity, opts.word_budget);
  return intersect_route(solution, products, gens, opts,
                         [&](const Mat2& m) { return m * x == y; }, nullptr);
}

Verdict decide_flt(std::span<const Mat2> gens, const Rat& x, const Rat& y,
                   const ReachOptions& opts) {
  Rat cx = x.is_inf() ? rat_inf() : make_rat(x.num, x.den);
  Rat cy = y.is_inf() ? rat_inf() : make_rat(y.num, y.den);
  SolutionSet sol = solve_flt_equation(cx, cy);
  SignedNfa solution;
  if (std::holds_alternative<EmptySet>(sol)) return {};
  if (const Line* line = std::get_if<Line>(&sol)) {
    solution = line_to_automaton(*line, opts.word_budget);
  } else {
    const LinePair& pair = std::get<LinePair>(sol);
    solution = nfa_union(line_to_automaton(pair.first, opts.word_budget),
                         line_to_automaton(pair.second, opts.word_budget));
  }
  SignedNfa products = semigroup_automaton(gens, opts.include_identity, opts.word_budget);
  return intersect_route(solution, products, gens, opts,
                         [&](const Mat2& m) { return mobius_apply(m, cx) == cy; }, nullptr);
}

Verdict decide_scalar_special(std::span<const Mat2> gens, const Int& a, const Vec2& x,
                              const ReachOptions& opts) {
  SolutionSet sol = solve_scalar_special(a, x);
  if (std::holds_alternative<EmptySet>(sol)) return {};

  SignedNfa solution = two_param_to_automaton(std::get<TwoParamLine>(sol), opts.word_budget);
  SignedNfa products = semigroup_automaton(gens, opts.include_identity, opts.word_budget);
  return intersect_route(solution, products, gens, opts,
                         [&](const Mat2& m) {
                           Vec2 v = m * x;
                           return a * v.x + v.y == 1;
                         },
                         nullptr);
}

Verdict decide_constrained(std::span<const Mat2> gens, const IndexNfa& constraint, const Vec2& x,
                           const Vec2& y, const ReachOptions& opts) {
  if (constraint.alphabet_size != static_cast<int>(gens.size()))
    throw InputError("decide_constrained: constraint alphabet must match the generator count");

  SolutionSet sol = solve_vector_equation(x, y);
  if (std::holds_alternative<EmptySet>(sol)) return {};
  if (std::holds_alternative<AllSl2>(sol)) {
    Verdict v;
    auto seq = shortest_accepted(constraint);
    if (!seq) return v;
    v.reachable = true;
    Witness w = witness_for(product_of(gens, *seq), opts.word_budget);
    if (opts.want_factorization) w.factorization = std::move(*seq);
    v.witness = std::move(w);
    return v;
  }

  std::vector<std::string> words;
  words.reserve(gens.size());
  for (const auto& g : gens) words.push_back(synth_word(g, opts.word_budget));
  SignedNfa solution = line_to_automaton(std::get<Line>(sol), opts.word_budget);
  SignedNfa products = substitute_words(constraint, words);
  return intersect_route(solution, products, gens, opts,
                         [&](const Mat2& m) { return m * x == y; }, &constraint);
}

Verdict decide_power_equation(std::span<const Mat2> ms, std::span<const Mat2> ns, const Vec2& x,
                              const Vec2& y, ExponentMode mode, const ReachOptions& opts) {
  const std::size_t l = ns.size(), k = ms.size(), nblocks = l + k;

  // Rewrite  ms^e * x == ns^f * y  as  P * x == y  with P running over
  // ns[l-1]^-f .. ns[0]^-f ms[0]^e .. ms[k-1]^e, exponent order enforced by a
  // chain of per-block loops.
  std::vector<Mat2> blocks;
  blocks.reserve(nblocks);
  for (std::size_t j = l; j-- > 0;) blocks.push_back(mat_inverse_sl2(ns[j]));
  for (const auto& m : ms) {
    if (!m.is_sl2()) throw InputError("decide_power_equation: matrices must be in SL(2,Z)");
    blocks.push_back(m);
  }

  std::vector<Mat2> gens;
  IndexNfa shape;
  if (mode == ExponentMode::non_negative) {
    gens = blocks;
    shape.alphabet_size = static_cast<int>(nblocks);
    int prev = shape.add_state();
    shape.initial = {prev};
    for (std::size_t i = 0; i < nblocks; ++i) {
      int hub = shape.add_state();
      shape.add_transition(prev, 0, hub);
      shape.add_transition(hub, static_cast<int>(i) + 1, hub);
      prev = hub;
    }
    shape.finals = {prev};
  } else {
    gens.reserve(2 * nblocks);
    for (const auto& b : blocks) {
      gens.push_back(b);
      gens.push_back(mat_inverse_sl2(b));
    }
    shape.alphabet_size = static_cast<int>(2 * nblocks);
    int prev = shape.add_state();
    shape.initial = {prev};
    for (std::size_t i = 0; i < nblocks; ++i) {
      int join = shape.add_state();
      for (int idx : {static_cast<int>(2 * i) + 1, static_cast<int>(2 * i) + 2}) {
        int hub = shape.add_state();
        shape.add_transition(prev, 0, hub);
        shape.add_transition(hub, idx, hub);
        shape.add_transition(hub, 0, join);
      }
      prev = join;
    }
    shape.finals = {prev};
  }

  SolutionSet sol = solve_vector_equation(x, y);
  Verdict v;
  if (std::holds_alternative<EmptySet>(sol)) return v;
  if (std::holds_alternative<AllSl2>(sol)) {
    v.reachable = true;
    v.witness = Witness{"", Sign::plus, mat_identity(), std::nullopt};
    v.exponents = PowerExponents{std::vector<Int>(k, 0), std::vector<Int>(l, 0)};
    return v;
  }

  std::vector<std::string> words;
  words.reserve(gens.size());
  for (const auto& g : gens) words.push_back(synth_word(g, opts.word_budget));
  SignedNfa solution = line_to_automaton(std::get<Line>(sol), opts.word_budget);
  SignedNfa products = substitute_words(shape, words);

  IntersectOptions io;
  io.want_runs = true;  // exponent recovery always needs the run
  io.node_budget = opts.node_budget;
  IntersectResult res = decide_intersection(solution, products, io);
  v.stats.saturation_edges = res.left.added_edges + res.right.added_edges;
  v.stats.product_states = res.product_states;
  if (!res.hit) return v;

  Witness w;
  w.reduced_word = res.hit->word;
  w.sign = res.hit->sign;
  w.matrix = w.sign * eval_phi(w.reduced_word);
  if (w.matrix * x != y) throw std::logic_error("decide_power_equation: witness fails the equation");

  std::vector<int> factors = expand_witness(products, res.right, res.run_right);
  if (product_of(gens, factors) != w.matrix)
    throw std::logic_error("decide_power_equation: factorization does not multiply back");
  if (!shape.accepts(factors))
    throw std::logic_error("decide_power_equation: factor order escapes the block chain");

  std::vector<Int> a(nblocks, 0);
  for (int f : factors) {
    if (mode == ExponentMode::non_negative)
      a[f - 1] += 1;
    else
      a[(f - 1) / 2] += (f % 2 == 1) ? 1 : -1;
  }
  PowerExponents pe;
  pe.left.assign(a.begin() + static_cast<std::ptrdiff_t>(l), a.end());
  pe.right.resize(l);
  for (std::size_t j = 0; j < l; ++j) pe.right[j] = a[l - 1 - j];

  Mat2 mprod = mat_identity(), nprod = mat_identity();
  for (std::size_t j = 0; j < k; ++j) mprod = mprod * mat_power(ms[j], pe.left[j]);
  for (std::size_t j = 0; j < l; ++j) nprod = nprod * mat_power(ns[j], pe.right[j]);
  if (mprod * x != nprod * y || w.matrix != mat_inverse_sl2(nprod) * mprod)
    throw std::logic_error("decide_power_equation: exponents do not satisfy the equation");

  v.reachable = true;
  v.witness = std::move(w);
  v.exponents = std::move(pe);
  return v;
}

}  // namespace sl2reach

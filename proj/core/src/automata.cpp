#include "sl2reach/automata.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <sstream>
#include <stdexcept>
#include <utility>

#include <boost/dynamic_bitset.hpp>

#include "sl2reach/errors.hpp"

namespace sl2reach {

namespace {

using Bitset = boost::dynamic_bitset<>;

Label letter_label(char ch) {
  if (ch == 'S') return Label::s;
  if (ch == 'R') return Label::r;
  throw InputError("letters must be 'S' or 'R'");
}

char label_letter(Label l) { return l == Label::s ? 'S' : 'R'; }

const char* label_text(Label l) {
  switch (l) {
    case Label::s: return "S";
    case Label::r: return "R";
    default: return "eps";
  }
}

// Reflexive-transitive closure of the eps edges among the first edge_limit
// transitions, one bitset row per state.
std::vector<Bitset> eps_closure_rows(const SignedNfa& nfa, std::size_t edge_limit) {
  int n = nfa.num_states;
  std::vector<std::vector<int>> adj(n);
  for (std::size_t i = 0; i < edge_limit; ++i) {
    const auto& e = nfa.transitions[i];
    if (e.label == Label::eps) adj[e.from].push_back(e.to);
  }
  std::vector<Bitset> rows(n, Bitset(n));
  std::vector<int> stack;
  for (int s = 0; s < n; ++s) {
    rows[s].set(s);
    stack.assign(1, s);
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v : adj[u])
        if (!rows[s].test(v)) {
          rows[s].set(v);
          stack.push_back(v);
        }
    }
  }
  return rows;
}

std::vector<Bitset> compose(const std::vector<Bitset>& a, const std::vector<Bitset>& b) {
  std::size_t n = a.size();
  std::vector<Bitset> c(n, Bitset(n));
  for (std::size_t u = 0; u < n; ++u)
    for (auto v = a[u].find_first(); v != Bitset::npos; v = a[u].find_next(v)) c[u] |= b[v];
  return c;
}

std::vector<Bitset> letter_rows(const SignedNfa& nfa, std::size_t edge_limit, Label which) {
  std::vector<Bitset> rows(nfa.num_states, Bitset(nfa.num_states));
  for (std::size_t i = 0; i < edge_limit; ++i) {
    const auto& e = nfa.transitions[i];
    if (e.label == which) rows[e.from].set(e.to);
  }
  return rows;
}

// Shortest run from `from` to `to` spelling exactly `pattern` (eps moves
// free), restricted to the first edge_limit edges.  Returns edge ids.
std::vector<std::size_t> find_pattern_run(const SignedNfa& nfa, std::size_t edge_limit, int from,
                                          int to, std::string_view pattern) {
  const int n = nfa.num_states;
  const int phases = static_cast<int>(pattern.size()) + 1;
  std::vector<std::vector<std::size_t>> out(n);
  for (std::size_t i = 0; i < edge_limit; ++i) out[nfa.transitions[i].from].push_back(i);

  const std::size_t npos = static_cast<std::size_t>(-1);
  std::vector<std::pair<std::size_t, std::size_t>> parent(static_cast<std::size_t>(phases) * n,
                                                          {npos, 0});
  std::vector<char> seen(static_cast<std::size_t>(phases) * n, 0);
  std::deque<std::size_t> queue;
  std::size_t start = from;  // phase 0
  std::size_t goal = static_cast<std::size_t>(phases - 1) * n + to;
  seen[start] = 1;
  queue.push_back(start);
  while (!queue.empty()) {
    std::size_t node = queue.front();
    queue.pop_front();
    if (node == goal) break;
    int phase = static_cast<int>(node / n);
    int state = static_cast<int>(node % n);
    for (std::size_t id : out[state]) {
      const auto& e = nfa.transitions[id];
      std::size_t next;
      if (e.label == Label::eps)
        next = static_cast<std::size_t>(phase) * n + e.to;
      else if (phase + 1 < phases && label_letter(e.label) == pattern[phase])
        next = static_cast<std::size_t>(phase + 1) * n + e.to;
      else
        continue;
      if (!seen[next]) {
        seen[next] = 1;
        parent[next] = {node, id};
        queue.push_back(next);
      }
    }
  }
  if (!seen[goal]) throw std::logic_error("saturate: recorded pair has no witnessing run");
  std::vector<std::size_t> path;
  for (std::size_t node = goal; node != start;) {
    auto [prev, id] = parent[node];
    path.push_back(id);
    node = prev;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

// Appends a fresh chain spelling `word` and returns its end state (`from`
// itself for the empty word).
int spell_chain(SignedNfa& nfa, int from, std::string_view word) {
  int cur = from;
  for (char ch : word) {
    int next = nfa.add_state();
    nfa.add_transition(cur, letter_label(ch), next);
    cur = next;
  }
  return cur;
}

// Cycle at `at` spelling `word`; no-op for the empty word.
void spell_cycle(SignedNfa& nfa, int at, std::string_view word) {
  if (word.empty()) return;
  int cur = at;
  for (std::size_t i = 0; i + 1 < word.size(); ++i) {
    int next = nfa.add_state();
    nfa.add_transition(cur, letter_label(word[i]), next);
    cur = next;
  }
  nfa.add_transition(cur, letter_label(word.back()), at);
}

// Fork into two loops spelling the shear to the given power and its inverse,
// then join: the segment accepts exactly the words of T^(step*s), s in Z.
int shear_fork(SignedNfa& nfa, int from, const Int& step) {
  int join = nfa.add_state();
  for (const Int& k : {step, Int(-step)}) {
    int hub = nfa.add_state();
    nfa.add_transition(from, Label::eps, hub);
    spell_cycle(nfa, hub, t_power_word(k));
    nfa.add_transition(hub, Label::eps, join);
  }
  return join;
}

std::string synth_word(const Mat2& m, std::size_t word_budget) {
  return word_budget ? synthesize(m, word_budget) : synthesize(m);
}

}  // namespace

std::size_t SignedNfa::add_transition(int from, Label label, int to) {
  transitions.push_back({from, label, to, std::nullopt, std::nullopt});
  return transitions.size() - 1;
}

bool SignedNfa::accepts(std::string_view word, Sign sign) const {
  if (!is_valid_word(word)) throw InputError("accepts: letters must be 'S' or 'R'");
  if (num_states == 0) return false;
  std::vector<std::vector<std::pair<Label, int>>> adj(num_states);
  for (const auto& e : transitions) adj[e.from].push_back({e.label, e.to});

  std::vector<char> cur(num_states, 0);
  std::vector<int> stack;
  auto close = [&](std::vector<char>& set) {
    stack.clear();
    for (int s = 0; s < num_states; ++s)
      if (set[s]) stack.push_back(s);
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (auto [lab, v] : adj[u])
        if (lab == Label::eps && !set[v]) {
          set[v] = 1;
          stack.push_back(v);
        }
    }
  };
  for (int s : initial) cur[s] = 1;
  close(cur);
  for (char ch : word) {
    Label want = letter_label(ch);
    std::vector<char> next(num_states, 0);
    for (int u = 0; u < num_states; ++u)
      if (cur[u])
        for (auto [lab, v] : adj[u])
          if (lab == want) next[v] = 1;
    close(next);
    cur = std::move(next);
  }
  const auto& finals = sign == Sign::plus ? fplus : fminus;
  for (int f : finals)
    if (cur[f]) return true;
  return false;
}

bool IndexNfa::accepts(std::span<const int> symbols) const {
  for (int s : symbols)
    if (s < 1 || s > alphabet_size) throw InputError("accepts: symbol out of range");
  if (num_states == 0) return false;
  std::vector<std::vector<std::pair<int, int>>> adj(num_states);
  for (const auto& e : transitions) adj[e.from].push_back({e.symbol, e.to});

  std::vector<char> cur(num_states, 0);
  std::vector<int> stack;
  auto close = [&](std::vector<char>& set) {
    stack.clear();
    for (int s = 0; s < num_states; ++s)
      if (set[s]) stack.push_back(s);
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (auto [sym, v] : adj[u])
        if (sym == 0 && !set[v]) {
          set[v] = 1;
          stack.push_back(v);
        }
    }
  };
  for (int s : initial) cur[s] = 1;
  close(cur);
  for (int want : symbols) {
    std::vector<char> next(num_states, 0);
    for (int u = 0; u < num_states; ++u)
      if (cur[u])
        for (auto [sym, v] : adj[u])
          if (sym == want) next[v] = 1;
    close(next);
    cur = std::move(next);
  }
  for (int f : finals)
    if (cur[f]) return true;
  return false;
}

std::optional<std::vector<int>> shortest_accepted(const IndexNfa& nfa) {
  const int n = nfa.num_states;
  if (n == 0) return std::nullopt;
  const std::size_t inf = static_cast<std::size_t>(-1);

  // Backward 0-1 distances: fewest symbols from each state to acceptance.
  std::vector<std::vector<std::pair<int, int>>> rin(n);  // to -> (from, symbol)
  for (const auto& e : nfa.transitions) rin[e.to].push_back({e.from, e.symbol});
  std::vector<std::size_t> bdist(n, inf);
  std::deque<int> dq;
  for (int f : nfa.finals)
    if (bdist[f] != 0) {
      bdist[f] = 0;
      dq.push_front(f);
    }
  while (!dq.empty()) {
    int u = dq.front();
    dq.pop_front();
    for (auto [from, sym] : rin[u]) {
      std::size_t nd = bdist[u] + (sym == 0 ? 0 : 1);
      if (nd < bdist[from]) {
        bdist[from] = nd;
        if (sym == 0)
          dq.push_front(from);
        else
          dq.push_back(from);
      }
    }
  }

  std::size_t best = inf;
  for (int s : nfa.initial) best = std::min(best, bdist[s]);
  if (best == inf) return std::nullopt;

  std::vector<std::vector<std::pair<int, int>>> adj(n);
  for (const auto& e : nfa.transitions) adj[e.from].push_back({e.symbol, e.to});
  std::vector<int> stack;
  auto close = [&](std::vector<char>& set) {
    stack.clear();
    for (int s = 0; s < n; ++s)
      if (set[s]) stack.push_back(s);
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (auto [sym, v] : adj[u])
        if (sym == 0 && !set[v]) {
          set[v] = 1;
          stack.push_back(v);
        }
    }
  };

  // Greedy lexicographic walk along states that stay on a shortest path.
  std::vector<char> cur(n, 0);
  for (int s : nfa.initial) cur[s] = 1;
  close(cur);
  std::vector<int> word;
  for (std::size_t remaining = best; remaining > 0; --remaining) {
    bool advanced = false;
    for (int sym = 1; sym <= nfa.alphabet_size && !advanced; ++sym) {
      std::vector<char> next(n, 0);
      for (int u = 0; u < n; ++u)
        if (cur[u])
          for (auto [lab, v] : adj[u])
            if (lab == sym) next[v] = 1;
      close(next);
      for (int v = 0; v < n; ++v)
        if (next[v] && bdist[v] < remaining) {
          word.push_back(sym);
          cur = std::move(next);
          advanced = true;
          break;
        }
    }
    if (!advanced) throw std::logic_error("shortest_accepted: greedy walk got stuck");
  }
  return word;
}

SignedNfa line_to_automaton(const Line& line, std::size_t word_budget) {
  SignedNfa nfa;
  int start = nfa.add_state();
  nfa.initial = {start};
  int mid = spell_chain(nfa, start, synth_word(line.left, word_budget));
  int join = shear_fork(nfa, mid, 1);
  nfa.fplus = {spell_chain(nfa, join, synth_word(line.right, word_budget))};
  return nfa;
}

SignedNfa two_param_to_automaton(const TwoParamLine& line, std::size_t word_budget) {
  SignedNfa nfa;
  int start = nfa.add_state();
  nfa.initial = {start};
  int p = spell_chain(nfa, start, synth_word(line.left, word_budget));
  p = shear_fork(nfa, p, line.step);
  p = spell_chain(nfa, p, synth_word(line.mid, word_budget));
  p = shear_fork(nfa, p, 1);
  nfa.fplus = {spell_chain(nfa, p, synth_word(line.right, word_budget))};
  return nfa;
}

SignedNfa nfa_union(const SignedNfa& a, const SignedNfa& b) {
  SignedNfa r = a;
  int off = a.num_states;
  r.num_states += b.num_states;
  for (const auto& e : b.transitions)
    r.transitions.push_back({e.from + off, e.label, e.to + off, e.tag, e.source});
  for (int s : b.initial) r.initial.push_back(s + off);
  for (int s : b.fplus) r.fplus.push_back(s + off);
  for (int s : b.fminus) r.fminus.push_back(s + off);
  return r;
}

SignedNfa substitute_words(const IndexNfa& shape, std::span<const std::string> words) {
  if (static_cast<int>(words.size()) != shape.alphabet_size)
    throw InputError("substitute_words: need one word per alphabet symbol");
  for (const auto& w : words)
    if (!is_valid_word(w)) throw InputError("substitute_words: letters must be 'S' or 'R'");

  SignedNfa nfa;
  nfa.num_states = shape.num_states;
  nfa.initial = shape.initial;
  nfa.fplus = shape.finals;
  for (const auto& e : shape.transitions) {
    if (e.from < 0 || e.from >= shape.num_states || e.to < 0 || e.to >= shape.num_states ||
        e.symbol < 0 || e.symbol > shape.alphabet_size)
      throw InputError("substitute_words: malformed shape");
    if (e.symbol == 0) {
      nfa.add_transition(e.from, Label::eps, e.to);
      continue;
    }
    const std::string& w = words[e.symbol - 1];
    if (w.empty()) {
      std::size_t id = nfa.add_transition(e.from, Label::eps, e.to);
      nfa.transitions[id].tag = FactorTag{e.symbol, true};
      continue;
    }
    int cur = e.from;
    for (std::size_t i = 0; i < w.size(); ++i) {
      bool last = i + 1 == w.size();
      int next = last ? e.to : nfa.add_state();
      std::size_t id = nfa.add_transition(cur, letter_label(w[i]), next);
      nfa.transitions[id].tag = FactorTag{e.symbol, last};
      cur = next;
    }
  }
  return nfa;
}

SignedNfa semigroup_automaton(std::span<const Mat2> generators, bool include_identity,
                              std::size_t word_budget) {
  std::vector<std::string> words;
  words.reserve(generators.size());
  for (const auto& g : generators) words.push_back(synth_word(g, word_budget));

  IndexNfa shape;
  shape.alphabet_size = static_cast<int>(generators.size());
  int hub = shape.add_state();
  shape.initial = {hub};
  if (include_identity) {
    shape.finals = {hub};
    for (int k = 1; k <= shape.alphabet_size; ++k) shape.add_transition(hub, k, hub);
  } else {
    int exit = shape.add_state();
    shape.finals = {exit};
    for (int k = 1; k <= shape.alphabet_size; ++k) shape.add_transition(hub, k, exit);
    shape.add_transition(exit, 0, hub);
  }
  return substitute_words(shape, words);
}

Saturation saturate(const SignedNfa& base, const SaturationOptions& opts) {
  Saturation out;
  SignedNfa& nfa = out.nfa;
  nfa.num_states = 2 * base.num_states;
  for (int q : base.initial) nfa.initial.push_back(2 * q);
  for (int q : base.fplus) {
    nfa.fplus.push_back(2 * q);
    nfa.fminus.push_back(2 * q + 1);
  }
  for (int q : base.fminus) {
    nfa.fminus.push_back(2 * q);
    nfa.fplus.push_back(2 * q + 1);
  }
  for (std::size_t i = 0; i < base.transitions.size(); ++i) {
    const auto& e = base.transitions[i];
    for (int layer : {0, 1})
      nfa.transitions.push_back({2 * e.from + layer, e.label, 2 * e.to + layer, e.tag, i});
  }

  const int n = nfa.num_states;
  if (n == 0) return out;
  std::vector<Bitset> eps_edge(n, Bitset(n));
  for (const auto& e : nfa.transitions)
    if (e.label == Label::eps) eps_edge[e.from].set(e.to);

  for (;;) {
    const std::size_t snapshot = nfa.transitions.size();
    auto closure = eps_closure_rows(nfa, snapshot);
    auto s_row = letter_rows(nfa, snapshot, Label::s);
    auto r_row = letter_rows(nfa, snapshot, Label::r);
    auto ese = compose(compose(closure, s_row), closure);
    auto ss = compose(compose(ese, s_row), closure);
    auto ere = compose(compose(closure, r_row), closure);
    auto rr = compose(compose(ere, r_row), closure);
    auto rrr = compose(compose(rr, r_row), closure);

    bool grew = false;
    for (int u = 0; u < n; ++u) {
      Bitset both = ss[u] | rrr[u];
      for (auto v = both.find_first(); v != Bitset::npos; v = both.find_next(v)) {
        int target = static_cast<int>(v) ^ 1;
        if (eps_edge[u].test(target)) continue;
        std::size_t id = nfa.add_transition(u, Label::eps, target);
        eps_edge[u].set(target);
        ++out.added_edges;
        grew = true;
        if (opts.record_provenance)
          out.provenance.emplace(
              id, find_pattern_run(nfa, snapshot, u, static_cast<int>(v),
                                   ss[u].test(v) ? std::string_view("SS") : std::string_view("RRR")));
      }
    }
    if (!grew) break;
  }
  return out;
}

namespace {

struct StepTables {
  std::vector<Bitset> next_s, next_r;
  Bitset start, fplus, fminus;
};

StepTables build_tables(const SignedNfa& nfa) {
  const int n = nfa.num_states;
  StepTables t;
  auto closure = eps_closure_rows(nfa, nfa.transitions.size());
  t.next_s = compose(compose(closure, letter_rows(nfa, nfa.transitions.size(), Label::s)), closure);
  t.next_r = compose(compose(closure, letter_rows(nfa, nfa.transitions.size(), Label::r)), closure);
  t.start = Bitset(n);
  for (int s : nfa.initial) t.start |= closure[s];
  t.fplus = Bitset(n);
  t.fminus = Bitset(n);
  for (int s : nfa.fplus) t.fplus.set(s);
  for (int s : nfa.fminus) t.fminus.set(s);
  return t;
}

}  // namespace

IntersectResult decide_intersection(const SignedNfa& a, const SignedNfa& b,
                                    const IntersectOptions& opts) {
  SaturationOptions sopts = opts.saturation;
  if (opts.want_runs) sopts.record_provenance = true;

  IntersectResult res;
  res.left = saturate(a, sopts);
  res.right = saturate(b, sopts);
  const std::size_t nl = res.left.nfa.num_states;
  const std::size_t nr = res.right.nfa.num_states;
  if (nl == 0 || nr == 0) return res;
  StepTables tl = build_tables(res.left.nfa);
  StepTables tr = build_tables(res.right.nfa);

  struct Node {
    std::size_t parent;
    char letter;
    std::size_t depth;
  };
  constexpr std::size_t no_parent = static_cast<std::size_t>(-1);
  std::unordered_map<std::size_t, Node> visited;
  std::deque<std::size_t> queue;
  auto visit = [&](std::size_t k, std::size_t parent, char letter, std::size_t depth) {
    if (visited.count(k)) return;
    visited.emplace(k, Node{parent, letter, depth});
    if (opts.node_budget && visited.size() > opts.node_budget)
      throw BudgetError("decide_intersection: product state budget exhausted");
    queue.push_back(k);
  };

  for (auto u = tl.start.find_first(); u != Bitset::npos; u = tl.start.find_next(u))
    for (auto v = tr.start.find_first(); v != Bitset::npos; v = tr.start.find_next(v))
      visit(u * nr + v, no_parent, 0, 0);

  std::optional<std::size_t> plus_key, minus_key;
  std::size_t minus_depth = 0;
  while (!queue.empty()) {
    std::size_t k = queue.front();
    queue.pop_front();
    Node node = visited.find(k)->second;
    if (minus_key && node.depth > minus_depth) break;
    std::size_t u = k / nr, v = k % nr;
    if (tl.fplus.test(u) && tr.fplus.test(v)) {
      plus_key = k;
      break;
    }
    if (!minus_key && tl.fminus.test(u) && tr.fminus.test(v)) {
      minus_key = k;
      minus_depth = node.depth;
    }
    for (char letter : {'R', 'S'}) {
      const auto& lrow = letter == 'R' ? tl.next_r[u] : tl.next_s[u];
      const auto& rrow = letter == 'R' ? tr.next_r[v] : tr.next_s[v];
      for (auto u2 = lrow.find_first(); u2 != Bitset::npos; u2 = lrow.find_next(u2))
        for (auto v2 = rrow.find_first(); v2 != Bitset::npos; v2 = rrow.find_next(v2))
          visit(u2 * nr + v2, k, letter, node.depth + 1);
    }
  }

  res.product_states = visited.size();
  std::size_t win;
  Sign sign;
  if (plus_key) {
    win = *plus_key;
    sign = Sign::plus;
  } else if (minus_key) {
    win = *minus_key;
    sign = Sign::minus;
  } else {
    return res;
  }

  std::string word;
  for (std::size_t k = win;;) {
    const Node& node = visited.find(k)->second;
    if (node.parent == no_parent) break;
    word.push_back(node.letter);
    k = node.parent;
  }
  std::reverse(word.begin(), word.end());
  res.hit = SignedWordHit{std::move(word), sign};

  if (opts.want_runs) {
    auto run_l = find_accepting_run(res.left.nfa, res.hit->word, sign);
    auto run_r = find_accepting_run(res.right.nfa, res.hit->word, sign);
    if (!run_l || !run_r)
      throw std::logic_error("decide_intersection: witness word lost its accepting run");
    res.run_left = std::move(*run_l);
    res.run_right = std::move(*run_r);
  }
  return res;
}

std::optional<std::vector<std::size_t>> find_accepting_run(const SignedNfa& nfa,
                                                           std::string_view word, Sign sign) {
  if (!is_valid_word(word)) throw InputError("find_accepting_run: letters must be 'S' or 'R'");
  const int n = nfa.num_states;
  if (n == 0) return std::nullopt;
  std::vector<std::vector<std::size_t>> out(n);
  for (std::size_t i = 0; i < nfa.transitions.size(); ++i) out[nfa.transitions[i].from].push_back(i);
  std::vector<char> is_final(n, 0);
  for (int f : sign == Sign::plus ? nfa.fplus : nfa.fminus) is_final[f] = 1;

  const std::size_t nodes = (word.size() + 1) * n;
  const std::size_t npos = static_cast<std::size_t>(-1);
  std::vector<char> seen(nodes, 0);
  std::vector<std::pair<std::size_t, std::size_t>> parent(nodes, {npos, 0});
  std::deque<std::size_t> queue;
  for (int s : nfa.initial)
    if (!seen[s]) {
      seen[s] = 1;
      queue.push_back(s);
    }
  std::optional<std::size_t> goal;
  while (!queue.empty()) {
    std::size_t node = queue.front();
    queue.pop_front();
    std::size_t layer = node / n;
    int state = static_cast<int>(node % n);
    if (layer == word.size() && is_final[state]) {
      goal = node;
      break;
    }
    for (std::size_t id : out[state]) {
      const auto& e = nfa.transitions[id];
      std::size_t next;
      if (e.label == Label::eps)
        next = layer * n + e.to;
      else if (layer < word.size() && label_letter(e.label) == word[layer])
        next = (layer + 1) * n + e.to;
      else
        continue;
      if (!seen[next]) {
        seen[next] = 1;
        parent[next] = {node, id};
        queue.push_back(next);
      }
    }
  }
  if (!goal) return std::nullopt;
  std::vector<std::size_t> path;
  for (std::size_t node = *goal; parent[node].first != npos; node = parent[node].first)
    path.push_back(parent[node].second);
  std::reverse(path.begin(), path.end());
  return path;
}

namespace {

void expand_edge(const Saturation& sat, std::size_t id, std::vector<std::size_t>& out) {
  auto it = sat.provenance.find(id);
  if (it != sat.provenance.end()) {
    for (std::size_t sub : it->second) expand_edge(sat, sub, out);
    return;
  }
  const auto& e = sat.nfa.transitions.at(id);
  if (!e.source) throw std::logic_error("expand_run: edge has neither source nor provenance");
  out.push_back(*e.source);
}

}  // namespace

std::vector<std::size_t> expand_run(const Saturation& sat, std::span<const std::size_t> run) {
  std::vector<std::size_t> out;
  for (std::size_t id : run) expand_edge(sat, id, out);
  return out;
}

std::vector<int> expand_witness(const SignedNfa& base, const Saturation& sat,
                                std::span<const std::size_t> run) {
  std::vector<int> factors;
  int at = 0;
  bool have = false;
  for (std::size_t id : expand_run(sat, run)) {
    const auto& e = base.transitions.at(id);
    if (have && e.from != at) throw std::logic_error("expand_witness: expanded run is torn");
    at = e.to;
    have = true;
    if (e.tag) {
      if (e.tag->completes) factors.push_back(e.tag->generator);
    } else if (e.label != Label::eps) {
      throw std::logic_error("expand_witness: untagged letter edge");
    }
  }
  return factors;
}

namespace {

int checked_state(const Int& value, int num_states) {
  if (value < 0 || value >= num_states) throw InputError("automaton text: state out of range");
  return static_cast<int>(value);
}

struct TextLines {
  std::vector<std::vector<std::string>> rows;
};

TextLines tokenize_sections(std::string_view text) {
  TextLines out;
  std::istringstream body{std::string(text)};
  std::string line;
  while (std::getline(body, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::vector<std::string> toks;
    std::string tok;
    while (ls >> tok) toks.push_back(tok);
    if (!toks.empty()) out.rows.push_back(std::move(toks));
  }
  return out;
}

}  // namespace

std::string format_signed_nfa(const SignedNfa& nfa) {
  std::ostringstream os;
  os << "states " << nfa.num_states << "\n";
  auto section = [&](const char* kw, const std::vector<int>& xs) {
    if (xs.empty()) return;
    os << kw;
    for (int x : xs) os << ' ' << x;
    os << "\n";
  };
  section("initial", nfa.initial);
  section("fplus", nfa.fplus);
  section("fminus", nfa.fminus);
  for (const auto& e : nfa.transitions)
    os << "trans " << e.from << ' ' << label_text(e.label) << ' ' << e.to << "\n";
  return os.str();
}

SignedNfa parse_signed_nfa(std::string_view text) {
  SignedNfa nfa;
  bool have_states = false;
  struct PendingEdge {
    Int from, to;
    Label label;
  };
  std::vector<PendingEdge> edges;
  std::vector<std::pair<std::vector<int>*, Int>> members;
  for (const auto& toks : tokenize_sections(text).rows) {
    const std::string& kw = toks[0];
    if (kw == "states") {
      if (toks.size() != 2 || have_states) throw InputError("automaton text: bad states line");
      Int n = parse_int(toks[1]);
      if (n < 0 || n > 1000000) throw InputError("automaton text: bad state count");
      nfa.num_states = static_cast<int>(n);
      have_states = true;
    } else if (kw == "initial" || kw == "fplus" || kw == "fminus") {
      auto* dst = kw == "initial" ? &nfa.initial : kw == "fplus" ? &nfa.fplus : &nfa.fminus;
      for (std::size_t i = 1; i < toks.size(); ++i) members.push_back({dst, parse_int(toks[i])});
    } else if (kw == "trans") {
      if (toks.size() != 4) throw InputError("automaton text: bad trans line");
      Label label;
      if (toks[2] == "S")
        label = Label::s;
      else if (toks[2] == "R")
        label = Label::r;
      else if (toks[2] == "eps")
        label = Label::eps;
      else
        throw InputError("automaton text: bad label '" + toks[2] + "'");
      edges.push_back({parse_int(toks[1]), parse_int(toks[3]), label});
    } else {
      throw InputError("automaton text: unknown section '" + kw + "'");
    }
  }
  if (!have_states) throw InputError("automaton text: missing states line");
  for (auto& [dst, v] : members) dst->push_back(checked_state(v, nfa.num_states));
  for (auto& e : edges)
    nfa.add_transition(checked_state(e.from, nfa.num_states), e.label,
                       checked_state(e.to, nfa.num_states));
  return nfa;
}

std::string format_index_nfa(const IndexNfa& nfa) {
  std::ostringstream os;
  os << "states " << nfa.num_states << "\n";
  auto section = [&](const char* kw, const std::vector<int>& xs) {
    if (xs.empty()) return;
    os << kw;
    for (int x : xs) os << ' ' << x;
    os << "\n";
  };
  section("initial", nfa.initial);
  section("final", nfa.finals);
  for (const auto& e : nfa.transitions) {
    os << "trans " << e.from << ' ';
    if (e.symbol == 0)
      os << "eps";
    else
      os << e.symbol;
    os << ' ' << e.to << "\n";
  }
  return os.str();
}

IndexNfa parse_index_nfa(std::string_view text, int alphabet_size) {
  if (alphabet_size < 0) throw InputError("automaton text: negative alphabet");
  IndexNfa nfa;
  nfa.alphabet_size = alphabet_size;
  bool have_states = false;
  struct PendingEdge {
    Int from, to;
    int symbol;
  };
  std::vector<PendingEdge> edges;
  std::vector<std::pair<std::vector<int>*, Int>> members;
  for (const auto& toks : tokenize_sections(text).rows) {
    const std::string& kw = toks[0];
    if (kw == "states") {
      if (toks.size() != 2 || have_states) throw InputError("automaton text: bad states line");
      Int n = parse_int(toks[1]);
      if (n < 0 || n > 1000000) throw InputError("automaton text: bad state count");
      nfa.num_states = static_cast<int>(n);
      have_states = true;
    } else if (kw == "initial" || kw == "final") {
      auto* dst = kw == "initial" ? &nfa.initial : &nfa.finals;
      for (std::size_t i = 1; i < toks.size(); ++i) members.push_back({dst, parse_int(toks[i])});
    } else if (kw == "trans") {
      if (toks.size() != 4) throw InputError("automaton text: bad trans line");
      int symbol;
      if (toks[2] == "eps") {
        symbol = 0;
      } else {
        Int v = parse_int(toks[2]);
        if (v < 0 || v > alphabet_size) throw InputError("automaton text: symbol out of range");
        symbol = static_cast<int>(v);
      }
      edges.push_back({parse_int(toks[1]), parse_int(toks[3]), symbol});
    } else {
      throw InputError("automaton text: unknown section '" + kw + "'");
    }
  }
  if (!have_states) throw InputError("automaton text: missing states line");
  for (auto& [dst, v] : members) dst->push_back(checked_state(v, nfa.num_states));
  for (auto& e : edges)
    nfa.add_transition(checked_state(e.from, nfa.num_states), e.symbol,
                       checked_state(e.to, nfa.num_states));
  return nfa;
}

namespace {

struct ExprParser {
  std::string_view src;
  std::size_t pos = 0;
  IndexNfa& nfa;

  struct Frag {
    int start, accept;
  };

  void skip_ws() {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
  }
  bool starts_atom() {
    skip_ws();
    return pos < src.size() &&
           (src[pos] == '(' || std::isdigit(static_cast<unsigned char>(src[pos])));
  }
  bool eat(char ch) {
    skip_ws();
    if (pos < src.size() && src[pos] == ch) {
      ++pos;
      return true;
    }
    return false;
  }

  Frag parse_alt() {
    std::vector<Frag> branches{parse_cat()};
    while (eat('|')) branches.push_back(parse_cat());
    if (branches.size() == 1) return branches[0];
    Frag out{nfa.add_state(), nfa.add_state()};
    for (const Frag& b : branches) {
      nfa.add_transition(out.start, 0, b.start);
      nfa.add_transition(b.accept, 0, out.accept);
    }
    return out;
  }

  Frag parse_cat() {
    if (!starts_atom()) throw InputError("constraint expression: expected '(' or a generator index");
    Frag out = parse_term();
    while (starts_atom()) {
      Frag next = parse_term();
      nfa.add_transition(out.accept, 0, next.start);
      out.accept = next.accept;
    }
    return out;
  }

  Frag parse_term() {
    Frag out = parse_atom();
    while (eat('*')) {
      Frag star{nfa.add_state(), nfa.add_state()};
      nfa.add_transition(star.start, 0, out.start);
      nfa.add_transition(star.start, 0, star.accept);
      nfa.add_transition(out.accept, 0, out.start);
      nfa.add_transition(out.accept, 0, star.accept);
      out = star;
    }
    return out;
  }

  Frag parse_atom() {
    skip_ws();
    if (eat('(')) {
      Frag inner = parse_alt();
      if (!eat(')')) throw InputError("constraint expression: missing ')'");
      return inner;
    }
    std::size_t begin = pos;
    while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
    if (begin == pos) throw InputError("constraint expression: expected a generator index");
    if (pos - begin > 6) throw InputError("constraint expression: index too large");
    int sym = std::stoi(std::string(src.substr(begin, pos - begin)));
    if (sym < 1 || sym > nfa.alphabet_size)
      throw InputError("constraint expression: index " + std::to_string(sym) +
                       " outside 1.." + std::to_string(nfa.alphabet_size));
    Frag out{nfa.add_state(), nfa.add_state()};
    nfa.add_transition(out.start, sym, out.accept);
    return out;
  }
};

}  // namespace

IndexNfa compile_index_expression(std::string_view expr, int alphabet_size) {
  if (alphabet_size < 0) throw InputError("constraint expression: negative alphabet");
  IndexNfa nfa;
  nfa.alphabet_size = alphabet_size;
  ExprParser parser{expr, 0, nfa};
  ExprParser::Frag frag = parser.parse_alt();
  parser.skip_ws();
  if (parser.pos != expr.size())
    throw InputError("constraint expression: unexpected text at position " +
                     std::to_string(parser.pos));
  nfa.initial = {frag.start};
  nfa.finals = {frag.accept};
  return nfa;
}

}  // namespace sl2reach

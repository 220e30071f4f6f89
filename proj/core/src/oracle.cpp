#include "sl2reach/oracle.hpp"

#include <algorithm>
#include <set>
#include <utility>
#include <vector>

#include "sl2reach/errors.hpp"

namespace sl2reach {

namespace {

bool within(const Mat2& m, const std::optional<Int>& bound) {
  if (!bound) return true;
  auto ok = [&](const Int& e) { return e <= *bound && e >= -*bound; };
  return ok(m.a) && ok(m.b) && ok(m.c) && ok(m.d);
}

std::optional<Witness> search_core(std::span<const Mat2> gens, const IndexNfa* constraint,
                                   const MatrixPredicate& pred, const SearchConfig& cfg) {
  for (const auto& g : gens)
    if (!g.is_sl2()) throw InputError("bfs_search: generators must be in SL(2,Z)");

  std::vector<std::vector<std::pair<int, int>>> adj;  // (symbol, to)
  std::vector<char> start;
  if (constraint) {
    if (constraint->alphabet_size != static_cast<int>(gens.size()))
      throw InputError("bfs_search: constraint alphabet must match the generator count");
    adj.resize(constraint->num_states);
    for (const auto& e : constraint->transitions) adj[e.from].push_back({e.symbol, e.to});
    start.assign(constraint->num_states, 0);
    for (int s : constraint->initial) start[s] = 1;
  }
  std::vector<int> stack;
  auto close = [&](std::vector<char>& set) {
    stack.clear();
    for (std::size_t s = 0; s < set.size(); ++s)
      if (set[s]) stack.push_back(static_cast<int>(s));
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
  if (constraint) close(start);
  auto accepted = [&](const std::vector<char>& set) {
    if (!constraint) return true;
    for (int f : constraint->finals)
      if (set[f]) return true;
    return false;
  };

  struct Node {
    Mat2 m;
    std::vector<char> set;
    std::size_t parent;
    int gen;
    int depth;
  };
  constexpr std::size_t no_parent = static_cast<std::size_t>(-1);
  std::vector<Node> arena;
  std::set<std::pair<Mat2, std::vector<char>>> seen;
  std::size_t explored = 0;

  auto make_witness = [&](std::size_t idx) {
    std::vector<int> factors;
    for (std::size_t i = idx; arena[i].parent != no_parent; i = arena[i].parent)
      factors.push_back(arena[i].gen);
    std::reverse(factors.begin(), factors.end());
    SignedWord r = reduce(synthesize(arena[idx].m));
    return Witness{std::move(r.word), r.sign, arena[idx].m, std::move(factors)};
  };
  auto charge = [&] {
    ++explored;
    if (cfg.node_budget && explored > cfg.node_budget)
      throw BudgetError("bfs_search: node budget exhausted");
  };

  arena.push_back({mat_identity(), start, no_parent, 0, 0});
  charge();
  if (cfg.dedupe) seen.insert({arena[0].m, arena[0].set});
  if (accepted(arena[0].set) && pred(arena[0].m)) return make_witness(0);

  for (std::size_t i = 0; i < arena.size(); ++i) {
    if (arena[i].depth >= cfg.max_depth) continue;
    const Mat2 parent_m = arena[i].m;
    const std::vector<char> parent_set = arena[i].set;
    const int depth = arena[i].depth;
    for (int g = 1; g <= static_cast<int>(gens.size()); ++g) {
      Mat2 m2 = parent_m * gens[g - 1];
      if (!within(m2, cfg.max_entry_magnitude)) continue;
      std::vector<char> set2;
      if (constraint) {
        set2.assign(constraint->num_states, 0);
        bool alive = false;
        for (std::size_t u = 0; u < parent_set.size(); ++u)
          if (parent_set[u])
            for (auto [sym, v] : adj[u])
              if (sym == g) {
                set2[v] = 1;
                alive = true;
              }
        if (!alive) continue;
        close(set2);
      }
      if (cfg.dedupe && !seen.insert({m2, set2}).second) continue;
      arena.push_back({std::move(m2), std::move(set2), i, g, depth + 1});
      charge();
      const Node& node = arena.back();
      if (accepted(node.set) && pred(node.m)) return make_witness(arena.size() - 1);
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<Witness> bfs_search(std::span<const Mat2> gens, const MatrixPredicate& pred,
                                  const SearchConfig& cfg) {
  return search_core(gens, nullptr, pred, cfg);
}

std::optional<Witness> bfs_search_constrained(std::span<const Mat2> gens,
                                              const IndexNfa& constraint,
                                              const MatrixPredicate& pred,
                                              const SearchConfig& cfg) {
  return search_core(gens, &constraint, pred, cfg);
}

}  // namespace sl2reach

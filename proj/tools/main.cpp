// Command line front end.  Instances are JSON documents (file argument or
// stdin), verdicts are JSON on stdout.  Exit codes: 0 decided, 2 bad input,
// 3 budget exhausted.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sl2reach/errors.hpp"
#include "sl2reach/oracle.hpp"
#include "sl2reach/reach.hpp"

using nlohmann::json;
using namespace sl2reach;

namespace {

using Clock = std::chrono::steady_clock;

Int int_from(const json& j, const std::string& what) {
  if (j.is_number_unsigned()) return Int(j.get<unsigned long long>());
  if (j.is_number_integer()) return Int(j.get<long long>());
  if (j.is_string()) {
    try {
      return parse_int(j.get<std::string>());
    } catch (const InputError&) {
      throw InputError(what + ": invalid integer literal \"" + j.get<std::string>() + "\"");
    }
  }
  throw InputError(what + ": expected an integer or a decimal string");
}

Vec2 vec_from(const json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 2) throw InputError(what + ": expected [x1, x2]");
  return {int_from(j[0], what), int_from(j[1], what)};
}

Mat2 mat_from(const json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_array() || j[0].size() != 2 ||
      !j[1].is_array() || j[1].size() != 2)
    throw InputError(what + ": expected [[a, b], [c, d]]");
  return {int_from(j[0][0], what), int_from(j[0][1], what), int_from(j[1][0], what),
          int_from(j[1][1], what)};
}

Rat rat_from(const json& j, const std::string& what) {
  if (j.is_number_integer() || j.is_number_unsigned()) return make_rat(int_from(j, what), 1);
  if (j.is_string()) {
    try {
      return parse_rat(j.get<std::string>());
    } catch (const InputError&) {
      throw InputError(what + ": invalid rational \"" + j.get<std::string>() +
                       "\" (expected \"p/q\", \"p\" or \"inf\")");
    }
  }
  throw InputError(what + ": expected a rational string or an integer");
}

std::vector<Mat2> mats_from(const json& j, const std::string& what) {
  if (!j.is_array()) throw InputError(what + ": expected an array of matrices");
  std::vector<Mat2> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(mat_from(j[i], what + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<Mat2> gens_from(const json& doc) { return mats_from(doc.at("generators"), "generators"); }

json int_to(const Int& v) { return v.str(); }

json mat_to(const Mat2& m) {
  return json::array({json::array({int_to(m.a), int_to(m.b)}),
                      json::array({int_to(m.c), int_to(m.d)})});
}

json witness_to(const Witness& w) {
  json out;
  out["word"] = w.reduced_word;
  out["sign"] = std::string(1, sign_char(w.sign));
  out["matrix"] = mat_to(w.matrix);
  if (w.factorization) out["factorization"] = *w.factorization;
  return out;
}

json verdict_to(const Verdict& v, long long elapsed_ms) {
  json out;
  out["reachable"] = v.reachable;
  if (v.witness) out["witness"] = witness_to(*v.witness);
  if (v.exponents) {
    json lhs = json::array(), rhs = json::array();
    for (const Int& e : v.exponents->left) lhs.push_back(int_to(e));
    for (const Int& e : v.exponents->right) rhs.push_back(int_to(e));
    out["exponents"] = {{"lhs", lhs}, {"rhs", rhs}};
  }
  out["stats"] = {{"saturation_edges", v.stats.saturation_edges},
                  {"product_states", v.stats.product_states},
                  {"elapsed_ms", elapsed_ms}};
  return out;
}

json line_to(const Line& line) { return {{"left", mat_to(line.left)}, {"right", mat_to(line.right)}}; }

json solution_to(const SolutionSet& sol) {
  json out;
  if (std::holds_alternative<EmptySet>(sol)) {
    out["kind"] = "empty";
  } else if (std::holds_alternative<AllSl2>(sol)) {
    out["kind"] = "all";
  } else if (const Line* line = std::get_if<Line>(&sol)) {
    out["kind"] = "line";
    out["line"] = line_to(*line);
  } else if (const LinePair* pair = std::get_if<LinePair>(&sol)) {
    out["kind"] = "line-pair";
    out["first"] = line_to(pair->first);
    out["second"] = line_to(pair->second);
  } else if (const TwoParamLine* tp = std::get_if<TwoParamLine>(&sol)) {
    out["kind"] = "two-param";
    out["left"] = mat_to(tp->left);
    out["step"] = int_to(tp->step);
    out["mid"] = mat_to(tp->mid);
    out["right"] = mat_to(tp->right);
  }
  return out;
}

IndexNfa constraint_from(const json& j, int alphabet_size) {
  if (j.is_object() && j.contains("expression") && j["expression"].is_string())
    return compile_index_expression(j["expression"].get<std::string>(), alphabet_size);
  if (j.is_object() && j.contains("automaton") && j["automaton"].is_string())
    return parse_index_nfa(j["automaton"].get<std::string>(), alphabet_size);
  throw InputError("constraint: expected {\"expression\": ...} or {\"automaton\": ...}");
}

json read_doc(const std::string& path) {
  std::string text;
  if (path.empty() || path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    text = buf.str();
  } else {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open input file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
}

void emit(const json& doc, bool pretty) { std::cout << doc.dump(pretty ? 2 : -1) << "\n"; }

struct ReachArgs {
  std::string input = "-";
  bool strict = false;
  bool no_factorization = false;
  bool pretty = false;
  std::size_t word_budget = 1000000;
  std::size_t node_budget = 0;

  ReachOptions options() const {
    ReachOptions opts;
    opts.include_identity = !strict;
    opts.want_factorization = !no_factorization;
    opts.word_budget = word_budget;
    opts.node_budget = node_budget;
    return opts;
  }
};

void add_reach_flags(CLI::App* cmd, ReachArgs& args) {
  cmd->add_option("input", args.input, "instance JSON file, or - for stdin");
  cmd->add_flag("--strict-semigroup", args.strict,
                "products of length >= 1 only (default includes the identity)");
  cmd->add_flag("--no-factorization", args.no_factorization,
                "skip the generator factorization of the witness");
  cmd->add_flag("--pretty", args.pretty, "indent the output document");
  cmd->add_option("--word-budget", args.word_budget,
                  "letter cap per synthesized generator word, 0 = unbounded");
  cmd->add_option("--node-budget", args.node_budget,
                  "product-state cap for the decision, 0 = unbounded");
}

ExponentMode mode_from(const json& doc) {
  std::string mode = doc.value("exponents", "non-negative");
  if (mode == "non-negative") return ExponentMode::non_negative;
  if (mode == "any-integer") return ExponentMode::any_integer;
  throw InputError("exponents: expected \"non-negative\" or \"any-integer\"");
}

template <typename Fn>
int timed_verdict(const ReachArgs& args, Fn&& decide) {
  auto t0 = Clock::now();
  Verdict v = decide();
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
  emit(verdict_to(v, ms), args.pretty);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"decision procedures for reachability in finitely generated "
               "sub-semigroups of SL(2,Z)"};
  app.require_subcommand(1);

  ReachArgs vector_args, flt_args, scalar_args, constrained_args, powers_args;
  std::string solve_input = "-";
  bool solve_pretty = false;
  std::string word_input = "-";
  std::string word_arg;
  std::size_t decompose_budget = 1000000;
  bool word_pretty = false;
  std::string oracle_input = "-";
  bool oracle_pretty = false;
  int oracle_depth = 8;
  std::size_t oracle_nodes = 0;
  long long oracle_entry = 0;

  CLI::App* reach = app.add_subcommand("reach", "decide a reachability instance");
  reach->require_subcommand(1);
  CLI::App* reach_vector =
      reach->add_subcommand("vector", "is there a product M of the generators with M*x == y?");
  add_reach_flags(reach_vector, vector_args);
  CLI::App* reach_flt =
      reach->add_subcommand("flt", "same for the fractional linear action: f_M(x) == y");
  add_reach_flags(reach_flt, flt_args);
  CLI::App* reach_scalar =
      reach->add_subcommand("scalar", "same for the scalar form [a, 1] * M * x == 1");
  add_reach_flags(reach_scalar, scalar_args);
  CLI::App* reach_constrained = reach->add_subcommand(
      "constrained", "vector reachability restricted to a generator-index language");
  add_reach_flags(reach_constrained, constrained_args);
  CLI::App* reach_powers = reach->add_subcommand(
      "powers", "solvability of lhs[0]^e0 * ... * x == rhs[0]^f0 * ... * y over exponents");
  add_reach_flags(reach_powers, powers_args);

  CLI::App* solve = app.add_subcommand("solve", "print the full solution set of an equation");
  solve->require_subcommand(1);
  CLI::App* solve_vector = solve->add_subcommand("vector", "solutions M of M*x == y");
  CLI::App* solve_flt = solve->add_subcommand("flt", "solutions M of f_M(x) == y");
  CLI::App* solve_scalar = solve->add_subcommand("scalar", "solutions M of [a, 1] * M * x == 1");
  for (CLI::App* cmd : {solve_vector, solve_flt, solve_scalar}) {
    cmd->add_option("input", solve_input, "instance JSON file, or - for stdin");
    cmd->add_flag("--pretty", solve_pretty, "indent the output document");
  }

  CLI::App* word = app.add_subcommand("word", "word utilities over the alphabet {S, R}");
  word->require_subcommand(1);
  CLI::App* word_eval = word->add_subcommand("eval", "multiply out a word");
  word_eval->add_option("word", word_arg, "word over {S, R}")->required();
  CLI::App* word_reduce = word->add_subcommand("reduce", "delete SS and RRR factors");
  word_reduce->add_option("word", word_arg, "word over {S, R}")->required();
  CLI::App* word_decompose =
      word->add_subcommand("decompose", "canonical word of a matrix: {\"matrix\": [[..], [..]]}");
  word_decompose->add_option("input", word_input, "matrix JSON file, or - for stdin");
  word_decompose->add_option("--word-budget", decompose_budget,
                             "letter cap for the result, 0 = unbounded");
  for (CLI::App* cmd : {word_eval, word_reduce, word_decompose})
    cmd->add_flag("--pretty", word_pretty, "indent the output document");

  CLI::App* oracle = app.add_subcommand(
      "oracle", "bounded brute-force search for M*x == y (a miss is not a proof)");
  oracle->add_option("input", oracle_input, "instance JSON file, or - for stdin");
  oracle->add_option("--depth", oracle_depth, "maximum product length");
  oracle->add_option("--node-budget", oracle_nodes, "explored-product cap, 0 = unbounded");
  oracle->add_option("--max-entry", oracle_entry,
                     "prune intermediate products with larger entries, 0 = off");
  oracle->add_flag("--pretty", oracle_pretty, "indent the output document");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (reach_vector->parsed()) {
      json doc = read_doc(vector_args.input);
      auto gens = gens_from(doc);
      Vec2 x = vec_from(doc.at("x"), "x"), y = vec_from(doc.at("y"), "y");
      return timed_verdict(vector_args,
                           [&] { return decide_vector(gens, x, y, vector_args.options()); });
    }
    if (reach_flt->parsed()) {
      json doc = read_doc(flt_args.input);
      auto gens = gens_from(doc);
      Rat x = rat_from(doc.at("x"), "x"), y = rat_from(doc.at("y"), "y");
      return timed_verdict(flt_args, [&] { return decide_flt(gens, x, y, flt_args.options()); });
    }
    if (reach_scalar->parsed()) {
      json doc = read_doc(scalar_args.input);
      auto gens = gens_from(doc);
      Int a = int_from(doc.at("a"), "a");
      Vec2 x = vec_from(doc.at("x"), "x");
      return timed_verdict(
          scalar_args, [&] { return decide_scalar_special(gens, a, x, scalar_args.options()); });
    }
    if (reach_constrained->parsed()) {
      json doc = read_doc(constrained_args.input);
      auto gens = gens_from(doc);
      Vec2 x = vec_from(doc.at("x"), "x"), y = vec_from(doc.at("y"), "y");
      IndexNfa constraint = constraint_from(doc.at("constraint"), int(gens.size()));
      return timed_verdict(constrained_args, [&] {
        return decide_constrained(gens, constraint, x, y, constrained_args.options());
      });
    }
    if (reach_powers->parsed()) {
      json doc = read_doc(powers_args.input);
      auto ms = mats_from(doc.at("lhs"), "lhs");
      std::vector<Mat2> ns;
      if (doc.contains("rhs")) ns = mats_from(doc["rhs"], "rhs");
      Vec2 x = vec_from(doc.at("x"), "x"), y = vec_from(doc.at("y"), "y");
      ExponentMode mode = mode_from(doc);
      return timed_verdict(powers_args, [&] {
        return decide_power_equation(ms, ns, x, y, mode, powers_args.options());
      });
    }
    if (solve_vector->parsed()) {
      json doc = read_doc(solve_input);
      Vec2 x = vec_from(doc.at("x"), "x"), y = vec_from(doc.at("y"), "y");
      emit(solution_to(solve_vector_equation(x, y)), solve_pretty);
      return 0;
    }
    if (solve_flt->parsed()) {
      json doc = read_doc(solve_input);
      Rat x = rat_from(doc.at("x"), "x"), y = rat_from(doc.at("y"), "y");
      emit(solution_to(solve_flt_equation(x, y)), solve_pretty);
      return 0;
    }
    if (solve_scalar->parsed()) {
      json doc = read_doc(solve_input);
      Int a = int_from(doc.at("a"), "a");
      Vec2 x = vec_from(doc.at("x"), "x");
      emit(solution_to(solve_scalar_special(a, x)), solve_pretty);
      return 0;
    }
    if (word_eval->parsed()) {
      emit(json{{"matrix", mat_to(eval_phi(word_arg))}}, word_pretty);
      return 0;
    }
    if (word_reduce->parsed()) {
      SignedWord r = reduce(word_arg);
      emit(json{{"word", r.word}, {"sign", std::string(1, sign_char(r.sign))}}, word_pretty);
      return 0;
    }
    if (word_decompose->parsed()) {
      json doc = read_doc(word_input);
      Mat2 m = mat_from(doc.at("matrix"), "matrix");
      std::string w = decompose_budget == 0 ? synthesize(m) : synthesize(m, decompose_budget);
      emit(json{{"word", w}}, word_pretty);
      return 0;
    }
    if (oracle->parsed()) {
      json doc = read_doc(oracle_input);
      auto gens = gens_from(doc);
      Vec2 x = vec_from(doc.at("x"), "x"), y = vec_from(doc.at("y"), "y");
      SearchConfig cfg;
      cfg.max_depth = oracle_depth;
      cfg.node_budget = oracle_nodes;
      if (oracle_entry > 0) cfg.max_entry_magnitude = Int(oracle_entry);
      auto maps = [&](const Mat2& m) { return m * x == y; };
      auto t0 = Clock::now();
      std::optional<Witness> hit;
      if (doc.contains("constraint")) {
        IndexNfa constraint = constraint_from(doc["constraint"], int(gens.size()));
        hit = bfs_search_constrained(gens, constraint, maps, cfg);
      } else {
        hit = bfs_search(gens, maps, cfg);
      }
      auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
      json out;
      out["found"] = hit.has_value();
      if (hit) out["witness"] = witness_to(*hit);
      out["stats"] = {{"elapsed_ms", ms}};
      emit(out, oracle_pretty);
      return 0;
    }
  } catch (const BudgetError& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return 3;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

// End-to-end tests of the sl2reach executable.  Instances go through a temp
// file, output and exit status come back through popen.

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "sl2reach/mat2.hpp"

using nlohmann::json;

namespace {

struct CliResult {
  int exit_code = -1;
  std::string output;
};

std::string temp_input(const json& doc) {
  static int counter = 0;
  std::string path = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") +
                     "/sl2reach_cli_" + std::to_string(++counter) + ".json";
  std::ofstream out(path);
  out << doc.dump();
  return path;
}

CliResult run_cli(const std::string& args) {
  std::string command = std::string(SL2REACH_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CliResult res;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) res.output.append(buf.data(), n);
  int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

CliResult run_cli(const std::string& args, const json& doc) {
  return run_cli(args + " " + temp_input(doc));
}

json parsed(const CliResult& res) {
  REQUIRE(res.exit_code == 0);
  return json::parse(res.output);
}

json without_elapsed(json doc) {
  if (doc.contains("stats")) doc["stats"].erase("elapsed_ms");
  return doc;
}

const json kT = json::parse("[[1, 1], [0, 1]]");
const json kS = json::parse("[[0, -1], [1, 0]]");

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("reach vector reports the shortest witness") {
    json doc = {{"generators", {kT}}, {"x", {0, 1}}, {"y", {3, 1}}};
    json out = parsed(run_cli("reach vector", doc));
    CHECK(out["reachable"] == true);
    CHECK(out["witness"]["word"] == "SRSRSR");
    CHECK(out["witness"]["sign"] == "-");
    CHECK(out["witness"]["matrix"] == json::parse(R"([["1", "3"], ["0", "1"]])"));
    CHECK(out["witness"]["factorization"] == json::parse("[1, 1, 1]"));
    CHECK(out["stats"].contains("elapsed_ms"));
  }

  TEST_CASE("reach vector handles unreachable instances") {
    json doc = {{"generators", {kT}}, {"x", {1, 0}}, {"y", {0, 1}}};
    json out = parsed(run_cli("reach vector", doc));
    CHECK(out["reachable"] == false);
    CHECK(!out.contains("witness"));
  }

  TEST_CASE("strict semigroup excludes the empty product") {
    json doc = {{"generators", {kT}}, {"x", {5, 7}}, {"y", {5, 7}}};
    CHECK(parsed(run_cli("reach vector", doc))["reachable"] == true);
    CHECK(parsed(run_cli("reach vector --strict-semigroup", doc))["reachable"] == false);
  }

  TEST_CASE("no-factorization trims the witness") {
    json doc = {{"generators", {kT}}, {"x", {0, 1}}, {"y", {2, 1}}};
    json out = parsed(run_cli("reach vector --no-factorization", doc));
    CHECK(out["reachable"] == true);
    CHECK(!out["witness"].contains("factorization"));
  }

  TEST_CASE("integer entries accept decimal strings beyond 64 bits") {
    std::string big = "1208925819614629174706176";  // 2^80
    json doc = {{"x", json::array({big, "1"})}, {"y", json::array({"1", big})}};
    json out = parsed(run_cli("solve vector", doc));
    CHECK(out["kind"] == "line");

    auto mat = [](const json& j) {
      return sl2reach::Mat2{sl2reach::parse_int(j[0][0].get<std::string>()),
                            sl2reach::parse_int(j[0][1].get<std::string>()),
                            sl2reach::parse_int(j[1][0].get<std::string>()),
                            sl2reach::parse_int(j[1][1].get<std::string>())};
    };
    sl2reach::Mat2 member = mat(out["line"]["left"]) * mat(out["line"]["right"]);
    sl2reach::Vec2 x{sl2reach::parse_int(big), 1}, y{1, sl2reach::parse_int(big)};
    CHECK(member * x == y);

    json small = {{"generators", {kT}}, {"x", json::array({"0", "1"})}, {"y", json::array({"3", "1"})}};
    CHECK(parsed(run_cli("reach vector", small))["reachable"] == true);
  }

  TEST_CASE("reach flt decides projective instances") {
    json doc = {{"generators", {kT}}, {"x", "0"}, {"y", "3"}};
    json out = parsed(run_cli("reach flt", doc));
    CHECK(out["reachable"] == true);
    CHECK(out["witness"]["factorization"] == json::parse("[1, 1, 1]"));

    doc["y"] = "inf";
    CHECK(parsed(run_cli("reach flt", doc))["reachable"] == false);

    json half = {{"generators", {kT}}, {"x", "1/2"}, {"y", "5/2"}};
    CHECK(parsed(run_cli("reach flt", half))["reachable"] == true);
  }

  TEST_CASE("reach scalar decides the special scalar form") {
    json doc = {{"generators", {kS}}, {"a", 0}, {"x", {1, 0}}};
    json out = parsed(run_cli("reach scalar --strict-semigroup", doc));
    CHECK(out["reachable"] == true);
    CHECK(out["witness"]["factorization"] == json::parse("[1]"));

    json miss = {{"generators", {kT}}, {"a", 0}, {"x", {1, 0}}};
    CHECK(parsed(run_cli("reach scalar --strict-semigroup", miss))["reachable"] == false);
  }

  TEST_CASE("reach constrained honors expression constraints") {
    json doc = {{"generators", {kT, kS}},
                {"x", {0, 1}},
                {"y", {1, 1}},
                {"constraint", {{"expression", "1* 2*"}}}};
    json out = parsed(run_cli("reach constrained", doc));
    CHECK(out["reachable"] == true);
    CHECK(out["witness"]["factorization"] == json::parse("[1]"));

    doc["constraint"] = {{"expression", "2 2*"}};
    CHECK(parsed(run_cli("reach constrained", doc))["reachable"] == false);
  }

  TEST_CASE("reach constrained honors automaton text") {
    std::string text = "states 2\ninitial 0\nfinal 1\ntrans 0 1 1\ntrans 1 2 1\n";
    json doc = {{"generators", {kT, kS}},
                {"x", {0, 1}},
                {"y", {-1, 0}},
                {"constraint", {{"automaton", text}}}};
    json out = parsed(run_cli("reach constrained", doc));
    CHECK(out["reachable"] == true);
    CHECK(out["witness"]["factorization"] == json::parse("[1, 2]"));
  }

  TEST_CASE("reach powers reports per-block exponents") {
    json doc = {{"lhs", {kT}}, {"x", {0, 1}}, {"y", {5, 1}}};
    json out = parsed(run_cli("reach powers", doc));
    CHECK(out["reachable"] == true);
    CHECK(out["exponents"]["lhs"] == json::parse(R"(["5"])"));
    CHECK(out["exponents"]["rhs"] == json::array());

    json neg = {{"lhs", {kT}}, {"x", {0, 1}}, {"y", {-2, 1}}, {"exponents", "any-integer"}};
    json hit = parsed(run_cli("reach powers", neg));
    CHECK(hit["reachable"] == true);
    CHECK(hit["exponents"]["lhs"] == json::parse(R"(["-2"])"));
    CHECK(parsed(run_cli("reach powers", {{"lhs", {kT}}, {"x", {0, 1}}, {"y", {-2, 1}}}))["reachable"] ==
          false);
  }

  TEST_CASE("solve vector prints the line of solutions") {
    json doc = {{"x", {0, 1}}, {"y", {0, 1}}};
    json out = parsed(run_cli("solve vector", doc));
    CHECK(out["kind"] == "line");
    CHECK(out["line"].contains("left"));
    CHECK(out["line"].contains("right"));

    CHECK(parsed(run_cli("solve vector", json{{"x", {0, 0}}, {"y", {1, 0}}}))["kind"] == "empty");
    CHECK(parsed(run_cli("solve vector", json{{"x", {0, 0}}, {"y", {0, 0}}}))["kind"] == "all");
    CHECK(parsed(run_cli("solve vector", json{{"x", {2, 0}}, {"y", {0, 3}}}))["kind"] == "empty");
  }

  TEST_CASE("solve flt prints a line pair") {
    json out = parsed(run_cli("solve flt", json{{"x", "0"}, {"y", "1/2"}}));
    CHECK(out["kind"] == "line-pair");
    CHECK(out["first"].contains("left"));
    CHECK(out["second"].contains("right"));
  }

  TEST_CASE("solve scalar prints a two parameter family") {
    json out = parsed(run_cli("solve scalar", json{{"a", 0}, {"x", {1, 0}}}));
    CHECK(out["kind"] == "two-param");
    CHECK(out.contains("step"));
    CHECK(parsed(run_cli("solve scalar", json{{"a", 0}, {"x", {2, 0}}}))["kind"] == "empty");
  }

  TEST_CASE("word utilities round trip") {
    json eval = parsed(run_cli("word eval SSSR"));
    CHECK(eval["matrix"] == json::parse(R"([["1", "1"], ["0", "1"]])"));

    json red = parsed(run_cli("word reduce RRRRRS"));
    CHECK(red["word"] == "RRS");
    CHECK(red["sign"] == "-");

    json dec = parsed(run_cli("word decompose", json{{"matrix", kT}}));
    CHECK(dec["word"] == "SRSS");
    json again = parsed(run_cli("word eval " + dec["word"].get<std::string>()));
    CHECK(again["matrix"] == json::parse(R"([["1", "1"], ["0", "1"]])"));
  }

  TEST_CASE("oracle finds small witnesses and reports misses honestly") {
    json doc = {{"generators", {kT}}, {"x", {0, 1}}, {"y", {3, 1}}};
    json out = parsed(run_cli("oracle", doc));
    CHECK(out["found"] == true);
    CHECK(out["witness"]["factorization"] == json::parse("[1, 1, 1]"));

    json deep = parsed(run_cli("oracle --depth 2", doc));
    CHECK(deep["found"] == false);
    CHECK(!deep.contains("witness"));

    doc["constraint"] = {{"expression", "1 1 1"}};
    CHECK(parsed(run_cli("oracle", doc))["found"] == true);
  }

  TEST_CASE("output is deterministic apart from elapsed time") {
    json doc = {{"generators", {kT, kS}}, {"x", {0, 1}}, {"y", {-3, 1}}};
    json a = without_elapsed(parsed(run_cli("reach vector", doc)));
    json b = without_elapsed(parsed(run_cli("reach vector", doc)));
    CHECK(a == b);
  }

  TEST_CASE("pretty output stays parseable") {
    json doc = {{"generators", {kT}}, {"x", {0, 1}}, {"y", {1, 1}}};
    CliResult res = run_cli("reach vector --pretty", doc);
    CHECK(res.exit_code == 0);
    CHECK(res.output.find('\n') != res.output.npos);
    CHECK(json::parse(res.output)["reachable"] == true);
  }

  TEST_CASE("input errors exit with 2") {
    std::string garbled = temp_input(json{{"generators", {kT}}});
    {
      std::ofstream out(garbled);
      out << "{ not json";
    }
    CHECK(run_cli("reach vector " + garbled).exit_code == 2);

    json missing = {{"generators", {kT}}, {"x", {0, 1}}};
    CHECK(run_cli("reach vector", missing).exit_code == 2);

    json not_sl2 = {{"generators", {json::parse("[[1, 0], [0, 2]]")}}, {"x", {0, 1}}, {"y", {0, 1}}};
    CHECK(run_cli("reach vector", not_sl2).exit_code == 2);

    json bad_rat = {{"generators", {kT}}, {"x", "one half"}, {"y", "0"}};
    CHECK(run_cli("reach flt", bad_rat).exit_code == 2);

    CHECK(run_cli("word eval SXR").exit_code == 2);
    CHECK(run_cli("reach vector --no-such-flag", json{}).exit_code == 2);
    CHECK(run_cli("reach vector /no/such/file.json").exit_code == 2);
  }

  TEST_CASE("budget exhaustion exits with 3") {
    json doc = {{"generators", {json::parse(R"([["1", "100"], ["0", "1"]])")}},
                {"x", {0, 1}},
                {"y", {100, 1}}};
    CHECK(parsed(run_cli("reach vector", doc))["reachable"] == true);
    CHECK(run_cli("reach vector --word-budget 10", doc).exit_code == 3);

    json wide = {{"generators", {kT, kS}}, {"x", {0, 1}}, {"y", {-3, 1}}};
    CHECK(run_cli("reach vector --node-budget 1", wide).exit_code == 3);
  }
}

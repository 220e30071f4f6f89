#include <random>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "sl2reach/automata.hpp"
#include "sl2reach/oracle.hpp"
#include "sl2reach/reach.hpp"

namespace {

using namespace sl2reach;

std::string random_word(std::size_t len, unsigned seed) {
  std::mt19937 eng(seed);
  std::string w;
  w.reserve(len);
  for (std::size_t i = 0; i < len; ++i) w += (eng() & 1) ? 'S' : 'R';
  return w;
}

// Entries around 2^61, primitive columns.
std::pair<Vec2, Vec2> wide_pair() {
  std::mt19937_64 eng(9001);
  auto big = [&] { return Int((eng() >> 2) | (std::uint64_t(1) << 61)); };
  Vec2 x{big(), big()}, y{big(), big()};
  Int gx = gcd(x.x, x.y), gy = gcd(y.x, y.y);
  x = {x.x / gx, x.y / gx};
  y = {y.x / gy, y.y / gy};
  return {x, y};
}

// Product of T^q * S factors with top-left entry grown past `limit`.
Mat2 bounded_quotient_matrix(const Int& limit) {
  std::mt19937 eng(4242);
  Mat2 m = mat_identity();
  while (abs(m.a) < limit) m = m * (mat_t_power(Int(2 + int(eng() % 7u))) * mat_s());
  return m;
}

void BM_ReduceLongWord(benchmark::State& state) {
  std::string w = random_word(std::size_t(state.range(0)), 7);
  for (auto _ : state) benchmark::DoNotOptimize(reduce(w));
}
BENCHMARK(BM_ReduceLongWord)->Arg(1000)->Arg(100000);

void BM_SynthesizeBoundedQuotient(benchmark::State& state) {
  Int limit = 1;
  for (int i = 0; i < state.range(0); ++i) limit *= 10;
  Mat2 m = bounded_quotient_matrix(limit);
  for (auto _ : state) benchmark::DoNotOptimize(synthesize(m));
}
BENCHMARK(BM_SynthesizeBoundedQuotient)->Arg(10)->Arg(12);

void BM_SolveVectorWideEntries(benchmark::State& state) {
  auto [x, y] = wide_pair();
  for (auto _ : state) benchmark::DoNotOptimize(solve_vector_equation(x, y));
}
BENCHMARK(BM_SolveVectorWideEntries);

void BM_SmithNormalForm(benchmark::State& state) {
  std::mt19937 eng(31);
  std::vector<Mat2> mats;
  for (int i = 0; i < 64; ++i) {
    auto e = [&] { return Int(int(eng() % 101u) - 50); };
    mats.push_back({e(), e(), e(), e()});
  }
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(smith_normal_form(mats[i]));
    i = (i + 1) % mats.size();
  }
}
BENCHMARK(BM_SmithNormalForm);

void BM_SaturateLineAutomaton(benchmark::State& state) {
  Line line{mat_t_power(3) * mat_s(), mat_s() * mat_t_power(-2)};
  SignedNfa base = line_to_automaton(line);
  for (auto _ : state) benchmark::DoNotOptimize(saturate(base));
}
BENCHMARK(BM_SaturateLineAutomaton);

void BM_DecideVector(benchmark::State& state) {
  std::vector<Mat2> gens{mat_t_power(1), mat_s()};
  Vec2 x{0, 1}, y{-3, 1};
  for (auto _ : state) benchmark::DoNotOptimize(decide_vector(gens, x, y));
}
BENCHMARK(BM_DecideVector);

void BM_OracleDepth8(benchmark::State& state) {
  std::vector<Mat2> gens{mat_t_power(1), mat_s()};
  Mat2 goal = mat_t_power(2) * mat_s() * mat_t_power(3);
  auto pred = [&](const Mat2& m) { return m == goal; };
  for (auto _ : state) benchmark::DoNotOptimize(bfs_search(gens, pred));
}
BENCHMARK(BM_OracleDepth8);

}  // namespace

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include "wordlogic/automata.hpp"
#include "wordlogic/logic.hpp"
#include "wordlogic/sequences.hpp"
#include "wordlogic/theorems.hpp"
#include "wordlogic/words.hpp"

using namespace wordlogic;

static void BM_nuc(benchmark::State& state) {
  const Word w = sequences::thue_morse_prefix(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(words::nuc(w));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_nuc)->RangeMultiplier(4)->Range(16, 4096)->Complexity();

static void BM_mnuc_exhaustive(benchmark::State& state) {
  words::MnucOptions opt;
  opt.witness_cap = 1;
  for (auto _ : state) benchmark::DoNotOptimize(words::mnuc_exhaustive(2, static_cast<std::size_t>(state.range(0)), opt));
}
BENCHMARK(BM_mnuc_exhaustive)->DenseRange(10, 18, 4)->Unit(benchmark::kMillisecond);

static void BM_circular_square_check(benchmark::State& state) {
  const Word c = sequences::ternary_thue_morse_prefix(static_cast<std::size_t>(state.range(0)),
                                                      sequences::TernaryMethod::kGapCount);
  for (auto _ : state) benchmark::DoNotOptimize(words::square_check(c, true));
}
BENCHMARK(BM_circular_square_check)->RangeMultiplier(4)->Range(64, 4096);

static void BM_theorem2_witness(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(theorems::theorem2_witness(n));
}
BENCHMARK(BM_theorem2_witness)->Arg(64)->Arg(127)->Arg(512);

static void BM_project(benchmark::State& state) {
  auto env = logic::PredicateEnv::standard();
  env.add_corpus(WORDLOGIC_CORPUS_DIR);
  const auto a = logic::Compiler(env).definition("tm_square_at");
  for (auto _ : state) benchmark::DoNotOptimize(automata::project(a, "p"));
}
BENCHMARK(BM_project);

static void BM_compile_c_squarefree(benchmark::State& state) {
  auto env = logic::PredicateEnv::standard();
  env.add_corpus(WORDLOGIC_CORPUS_DIR);
  for (auto _ : state) {
    logic::Compiler compiler(env);
    benchmark::DoNotOptimize(compiler.definition("c_squarefree"));
  }
}
BENCHMARK(BM_compile_c_squarefree)->Unit(benchmark::kMillisecond)->Iterations(1);
BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include "seqdec/analysis.hpp"
#include "seqdec/heuristics.hpp"
#include "seqdec/machines.hpp"

using namespace seqdec;

namespace {

AlphabetPtr alphabet(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(std::string(1, static_cast<char>('a' + i)));
  return make_alphabet(names);
}

/// Unit weights, threshold v: the bound is 1 + n(v - 1).
CsrSpec unit_csr(std::size_t n, std::int64_t v) {
  return CsrSpec{alphabet(n), std::vector<Rational>(n, Rational(1)), Rational(v)};
}

OsrSpec osr(std::size_t n, std::size_t span) {
  std::vector<Symbol> order(n);
  for (Symbol i = 0; i < n; ++i) order[i] = i;
  return OsrSpec{alphabet(n), order, 0, span};
}

void BM_CsrCompile(benchmark::State& state) {
  const auto spec = unit_csr(3, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(csr_compile(spec));
  state.counters["states"] = static_cast<double>(csr_compile(spec).state_count());
}
BENCHMARK(BM_CsrCompile)->DenseRange(2, 6);

void BM_Minimize(benchmark::State& state) {
  const auto aut = config_compile(make_config_rule(alphabet(3), state.range(0), ComparatorKind::NumericValue));
  for (auto _ : state) benchmark::DoNotOptimize(minimize(aut));
  state.counters["states"] = static_cast<double>(aut.state_count());
}
BENCHMARK(BM_Minimize)->DenseRange(2, 7);

void BM_UniformBoundSearch(benchmark::State& state) {
  const Rule rule = Rule::from_automaton(csr_compile(unit_csr(3, state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(uniform_bound_search(rule));
}
BENCHMARK(BM_UniformBoundSearch)->DenseRange(2, 4);

void BM_BlackBoxTabulation(benchmark::State& state) {
  const auto spec = unit_csr(2, state.range(0));
  const std::size_t horizon = csr_uniform_bound(spec);
  for (auto _ : state) {
    const Rule rule = Rule::black_box(spec.alphabet, spec.alphabet,
                                      [&](const Sequence& s) { return csr_evaluate(spec, s).choice; }, horizon);
    benchmark::DoNotOptimize(uniform_bound_search(rule));
  }
}
BENCHMARK(BM_BlackBoxTabulation)->DenseRange(2, 6);

void BM_CsrSuite(benchmark::State& state) {
  const Rule rule = Rule::from_automaton(csr_compile(unit_csr(3, state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(run_suite(rule, Suite::Csr));
}
BENCHMARK(BM_CsrSuite)->DenseRange(2, 3)->Unit(benchmark::kMillisecond);

void BM_OsrSuite(benchmark::State& state) {
  const Rule rule = Rule::from_automaton(osr_compile(osr(3, state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(run_suite(rule, Suite::Osr));
}
BENCHMARK(BM_OsrSuite)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

void BM_ConfigSuite(benchmark::State& state) {
  const Rule rule =
      Rule::from_automaton(config_compile(make_config_rule(alphabet(3), state.range(0), ComparatorKind::NumericValue)));
  for (auto _ : state) benchmark::DoNotOptimize(run_suite(rule, Suite::Config));
}
BENCHMARK(BM_ConfigSuite)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

void BM_TmRun(benchmark::State& state) {
  const auto spec = unit_csr(3, state.range(0));
  const TwoTapeTm tm = automaton_to_tm(csr_compile(spec));
  const Sequence seq = parse_sequence(spec.alphabet, "|a b c");
  for (auto _ : state) benchmark::DoNotOptimize(tm_run(tm, seq, 2 * csr_uniform_bound(spec)));
}
BENCHMARK(BM_TmRun)->DenseRange(2, 6);

}  // namespace

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include "qbfmp/bp.hpp"
#include "qbfmp/decimation.hpp"
#include "qbfmp/factor_graph.hpp"
#include "qbfmp/gen.hpp"
#include "qbfmp/heuristics.hpp"
#include "qbfmp/qdpll.hpp"
#include "qbfmp/rng.hpp"
#include "qbfmp/sat.hpp"
#include "qbfmp/sp.hpp"

using namespace qbfmp;

namespace {

// Density 4.1 makes SP work hard; BP on the same graph is the baseline.
void BM_BpRun(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Cnf cnf = random_kcnf(n, 3, clauses_for_ratio(4.1, n), 1);
  const FactorGraph g(n, cnf);
  for (auto _ : state) benchmark::DoNotOptimize(bp_run(g, BpParams{}));
}
BENCHMARK(BM_BpRun)->Arg(250)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_SpRun(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Cnf cnf = random_kcnf(n, 3, clauses_for_ratio(4.1, n), 1);
  const FactorGraph g(n, cnf);
  for (auto _ : state) benchmark::DoNotOptimize(sp_run(g, BpParams{}));
}
BENCHMARK(BM_SpRun)->Arg(250)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_SatSolve(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Cnf cnf = random_kcnf(n, 3, clauses_for_ratio(4.26, n), 7);
  for (auto _ : state) benchmark::DoNotOptimize(sat_solve(cnf));
}
BENCHMARK(BM_SatSolve)->Arg(50)->Arg(100)->Arg(150)->Unit(benchmark::kMillisecond);

void BM_Qdpll(benchmark::State& state) {
  const auto kind = static_cast<HeuristicKind>(state.range(0));
  const auto f = gen_lk(LkSpec{1, 3, 12, 12, clauses_for_ratio(5.0, 12)}, 3);
  for (auto _ : state) benchmark::DoNotOptimize(qdpll_solve(f, kind, BpParams{}));
  state.SetLabel(std::string(heuristic_name(kind)));
}
BENCHMARK(BM_Qdpll)
    ->Arg(static_cast<int>(HeuristicKind::Vsids))
    ->Arg(static_cast<int>(HeuristicKind::Bph))
    ->Arg(static_cast<int>(HeuristicKind::Bpdh))
    ->Arg(static_cast<int>(HeuristicKind::Index))
    ->Unit(benchmark::kMillisecond);

void BM_Bpdu(benchmark::State& state) {
  const auto f = gen_lk(LkSpec{1, 2, 50, 50, clauses_for_ratio(2.0, 50)}, 5);
  for (auto _ : state) benchmark::DoNotOptimize(bpdu(f, ProverOptions{}));
}
BENCHMARK(BM_Bpdu)->Unit(benchmark::kMillisecond);

void BM_GenLk(benchmark::State& state) {
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(gen_lk(LkSpec{1, 3, 100, 100, 500}, seed++));
}
BENCHMARK(BM_GenLk)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();

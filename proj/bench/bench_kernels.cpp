#include <benchmark/benchmark.h>

#include <cmath>

#include "sis/generators.hpp"
#include "sis/kernels.hpp"
#include "sis/mpc.hpp"
#include "sis/params.hpp"

namespace {

sis::Graph bench_graph(std::int64_t n) {
  return sis::make_random_connected(static_cast<std::size_t>(n), static_cast<std::size_t>(2 * n), 7);
}

void BM_LogPartitionSerial(benchmark::State& state) {
  const auto g = bench_graph(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(
        sis::kernels::log_partition_serial(g.adjacency_masks(), std::log(0.5), std::log(2.0)));
}

void BM_LogPartitionParallel(benchmark::State& state) {
  const auto g = bench_graph(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(
        sis::kernels::log_partition_parallel(g.adjacency_masks(), std::log(0.5), std::log(2.0)));
}

void BM_AttainedPairsSerial(benchmark::State& state) {
  const auto g = bench_graph(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(sis::kernels::attained_pairs_serial(g.adjacency_masks(), g.edge_count()));
}

void BM_AttainedPairsParallel(benchmark::State& state) {
  const auto g = bench_graph(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(sis::kernels::attained_pairs_parallel(g.adjacency_masks(), g.edge_count()));
}

void BM_DetailedBalanceSerial(benchmark::State& state) {
  const auto g = bench_graph(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(sis::kernels::detailed_balance_residual_serial(
        g.adjacency_masks(), std::log(0.7), 0.0, std::log(1.5)));
}

void BM_DetailedBalanceParallel(benchmark::State& state) {
  const auto g = bench_graph(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(sis::kernels::detailed_balance_residual_parallel(
        g.adjacency_masks(), std::log(0.7), 0.0, std::log(1.5)));
}

void BM_MincutGridScale(benchmark::State& state) {
  const auto g = sis::make_random_connected(5000, 6600, 11);
  const auto p = sis::EpidemicParams::from_ratio(sis::Rational(33, 100), sis::Rational(13, 5));
  for (auto _ : state)
    benchmark::DoNotOptimize(sis::solve_mpc_mincut(g, p, sis::TiePolicy::maximal));
}

}  // namespace

BENCHMARK(BM_LogPartitionSerial)->DenseRange(12, 20, 4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LogPartitionParallel)->DenseRange(12, 20, 4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AttainedPairsSerial)->DenseRange(12, 20, 4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AttainedPairsParallel)->DenseRange(12, 20, 4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DetailedBalanceSerial)->DenseRange(12, 20, 4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DetailedBalanceParallel)->DenseRange(12, 20, 4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MincutGridScale)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

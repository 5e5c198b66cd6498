#include <benchmark/benchmark.h>

#include <random>

#include "tdlc/linalg.hpp"

using namespace tdlc::linalg;

namespace {

SparseMatrix<Integer> random_square(std::size_t n, double density, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution keep(density);
  std::uniform_int_distribution<long> value(-9, 9);
  std::vector<Entry<Integer>> entries;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (keep(rng))
        if (long v = value(rng); v != 0) entries.push_back({i, j, Integer(v)});
  return SparseMatrix<Integer>::from_entries(n, n, entries);
}

void BM_Smith(benchmark::State& state) {
  auto a = random_square(static_cast<std::size_t>(state.range(0)), 0.1, 17);
  for (auto _ : state) benchmark::DoNotOptimize(smith(a));
}
BENCHMARK(BM_Smith)->Arg(20)->Arg(40)->Arg(60)->Unit(benchmark::kMillisecond);

void BM_InvariantFactors(benchmark::State& state) {
  auto a = random_square(static_cast<std::size_t>(state.range(0)), 0.1, 23);
  for (auto _ : state) benchmark::DoNotOptimize(invariant_factors(a));
}
BENCHMARK(BM_InvariantFactors)->Arg(20)->Arg(40)->Arg(60)->Unit(benchmark::kMillisecond);

void BM_RankQ(benchmark::State& state) {
  auto a = random_square(static_cast<std::size_t>(state.range(0)), 0.1, 29);
  for (auto _ : state) benchmark::DoNotOptimize(rank_q(a));
}
BENCHMARK(BM_RankQ)->Arg(40)->Arg(80)->Arg(120)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

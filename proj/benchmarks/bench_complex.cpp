#include <benchmark/benchmark.h>

#include "tdlc/complex.hpp"
#include "tdlc/germ.hpp"
#include "tdlc/homology.hpp"
#include "tdlc/scan.hpp"

using namespace tdlc;

namespace {

void BM_Ball(benchmark::State& state) {
  auto g = germ::parse_germ("dl:2,2");
  for (auto _ : state) benchmark::DoNotOptimize(germ::ball(*g, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_Ball)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

void BM_Rips(benchmark::State& state) {
  auto g = germ::parse_germ("grid:2");
  auto b = germ::ball(*g, 5);
  for (auto _ : state) benchmark::DoNotOptimize(complex::rips(b, static_cast<std::size_t>(state.range(0)), 3));
}
BENCHMARK(BM_Rips)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_RipsHomology(benchmark::State& state) {
  auto g = germ::parse_germ("tree:3");
  auto k = complex::rips(germ::ball(*g, 3), static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state)
    benchmark::DoNotOptimize(homology::homology(complex::chain_complex(k, linalg::Ring::Z, false)));
}
BENCHMARK(BM_RipsHomology)->DenseRange(1, 2)->Unit(benchmark::kMillisecond);

void BM_BrownScan(benchmark::State& state) {
  scan::ScanGrid grid;
  grid.germ = germ::parse_germ("grid:2");
  grid.radii = {4, 6};
  grid.scales = {1, 2};
  grid.dims = {1};
  grid.threads = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(scan::brown_scan(grid));
}
BENCHMARK(BM_BrownScan)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

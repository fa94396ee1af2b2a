// Serial reference against the OpenMP sweep on a fig4-sized grid.

#include <benchmark/benchmark.h>

#include <vector>

#include "micromacro/sweep.hpp"

namespace {

std::vector<mm::SweepPoint> grid() {
  std::vector<mm::SweepPoint> pts;
  for (int m = 0; m <= 3; ++m)
    for (int k = 1; k <= 24; ++k) pts.push_back({0.5 * k, m, mm::TransmissionPolicy::balanced()});
  return pts;
}

void BM_SweepSerial(benchmark::State& state) {
  const auto pts = grid();
  for (auto _ : state) benchmark::DoNotOptimize(mm::sweep_serial(pts, 128));
  state.SetItemsProcessed(state.iterations() * static_cast<long long>(pts.size()));
}

void BM_SweepParallel(benchmark::State& state) {
  const auto pts = grid();
  const int workers = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(mm::sweep_parallel(pts, 128, workers));
  state.SetItemsProcessed(state.iterations() * static_cast<long long>(pts.size()));
}

}  // namespace

BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SweepParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();

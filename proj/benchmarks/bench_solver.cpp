#include <benchmark/benchmark.h>

#include "vformation/solver.hpp"

using namespace vform;

namespace {

FormationLayout layout_with(int n_span, int n_chord) {
  auto layout = baseline_v_layout();
  for (auto& m : layout.members) {
    m.wing.n_span = n_span;
    m.wing.n_chord = n_chord;
  }
  return layout;
}

void BM_BiotSavartSegment(benchmark::State& state) {
  const Vec3 p(0.3, 0.2, 0.1), a(0.0, -0.5, 0.0), b(0.0, 0.5, 0.0);
  for (auto _ : state) benchmark::DoNotOptimize(biot_savart_segment(p, a, b, 1.0, 1e-6));
}
BENCHMARK(BM_BiotSavartSegment);

void BM_AssembleFormation(benchmark::State& state) {
  const auto layout = layout_with(static_cast<int>(state.range(0)), 8);
  for (auto _ : state) benchmark::DoNotOptimize(assemble_formation(layout, 4.0));
}
BENCHMARK(BM_AssembleFormation)->Arg(16)->Arg(32);

void BM_AssembleSystem(benchmark::State& state) {
  const Lattice lattice = assemble_formation(layout_with(static_cast<int>(state.range(0)), 8), 4.0);
  FlightCondition cond;
  for (auto _ : state) benchmark::DoNotOptimize(assemble_system(lattice, cond));
}
BENCHMARK(BM_AssembleSystem)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_SolveFormation(benchmark::State& state) {
  const auto layout = layout_with(static_cast<int>(state.range(0)), 8);
  FlightCondition cond;
  for (auto _ : state) benchmark::DoNotOptimize(solve_formation(layout, cond));
}
BENCHMARK(BM_SolveFormation)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

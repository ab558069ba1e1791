// Serial reference against the OpenMP kernels on the same inputs.

#include <benchmark/benchmark.h>

#include "hardcore/contour.hpp"
#include "hardcore/ensemble.hpp"
#include "hardcore/flow.hpp"
#include "hardcore/sampler.hpp"

using namespace hardcore;

namespace {

Exec exec_of(const benchmark::State& state) { return state.range(0) == 0 ? Exec::serial : Exec::parallel; }

void label(benchmark::State& state) { state.SetLabel(state.range(0) == 0 ? "serial" : "parallel"); }

const Torus& t6() {
  static const Torus t = Torus::make(2, 3);
  return t;
}

void BM_CountJ(benchmark::State& state) {
  const Ensemble e(t6(), Boundary::even);
  for (auto _ : state) benchmark::DoNotOptimize(count_J(e, kDefaultEnumerationBudget, exec_of(state)));
  label(state);
}

void BM_EnumerateJ0(benchmark::State& state) {
  const Ensemble e(t6(), Boundary::even);
  const Vertex v0 = t6().vertex_at(std::vector<int>{1, 0});
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_J0(e, v0, kDefaultEnumerationBudget, exec_of(state)));
  label(state);
}

void BM_ContourAudit(benchmark::State& state) {
  const Ensemble e(t6(), Boundary::even);
  const Vertex v0 = t6().vertex_at(std::vector<int>{1, 0});
  const auto configs = enumerate_J0(e, v0);
  for (auto _ : state) benchmark::DoNotOptimize(contour_audit(e, v0, configs, exec_of(state)));
  label(state);
}

void BM_DefectAudit(benchmark::State& state) {
  const Ensemble e(t6(), Boundary::odd);
  const Activity lam(Rational(1));
  for (auto _ : state)
    benchmark::DoNotOptimize(
        defect_audit(e, lam, t6().origin(), FlowPolicy::forced_large(), kDefaultEnumerationBudget, exec_of(state)));
  label(state);
}

void BM_GapScan(benchmark::State& state) {
  const Torus t = Torus::make(2, 4);
  for (auto _ : state)
    benchmark::DoNotOptimize(gap_scan(t, {0.5, 1.0, 2.0, 5.0}, t.origin(), 20000, 2000, 1, exec_of(state)));
  label(state);
}

}  // namespace

BENCHMARK(BM_CountJ)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_EnumerateJ0)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ContourAudit)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_DefectAudit)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_GapScan)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();

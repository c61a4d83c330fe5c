// Serial reference against the OpenMP kernels. Arg 0 is serial, 1 parallel.

#include <benchmark/benchmark.h>

#include "rfg/chevalley.hpp"
#include "rfg/group_table.hpp"
#include "rfg/growth.hpp"

using namespace rfg;

namespace {

Exec exec_of(const benchmark::State &state) { return state.range(0) ? Exec::parallel : Exec::serial; }

void BM_ScanSL2(benchmark::State &state) {
  const auto spec = chevalley::GroupSpec::sl(2);
  for (auto _ : state)
    benchmark::DoNotOptimize(chevalley::scan_special_linear(spec, 49, exec_of(state), 50'000'000));
}

void BM_ScanSL3(benchmark::State &state) {
  const auto spec = chevalley::GroupSpec::sl(3);
  for (auto _ : state)
    benchmark::DoNotOptimize(chevalley::scan_special_linear(spec, 4, exec_of(state), 50'000'000));
}

void BM_BruteForceD(benchmark::State &state) {
  const auto spec = chevalley::GroupSpec::sl(2);
  const IntMat a = IntMat::elementary(2, 0, 1, 2520);
  for (auto _ : state)
    benchmark::DoNotOptimize(matgrp::brute_force_D(a, spec, 200, exec_of(state)));
}

void BM_FarbGrowth(benchmark::State &state) {
  const auto spec = chevalley::GroupSpec::sl(2);
  const auto gens = growth::GeneratingSet::sl2_st();
  for (auto _ : state)
    benchmark::DoNotOptimize(growth::farb_growth(gens, spec, 12, {.exec = exec_of(state)}));
}

void BM_CommutatorCheck(benchmark::State &state) {
  const auto spec = chevalley::GroupSpec::sl(2);
  chevalley::CheckOptions opts;
  opts.enumeration.exec = exec_of(state);
  for (auto _ : state)
    benchmark::DoNotOptimize(chevalley::commutator_filtration_check(spec, 5, 2, opts));
}

} // namespace

BENCHMARK(BM_ScanSL2)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScanSL3)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BruteForceD)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FarbGrowth)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CommutatorCheck)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include "mmnet/coverage.hpp"
#include "mmnet/mc.hpp"
#include "mmnet/params.hpp"
#include "mmnet/series.hpp"
#include "mmnet/specfun.hpp"
#include "mmnet/throughput.hpp"

namespace {

const mmnet::QuadratureSpec kQuad;

mmnet::NetworkParams at(double psi, int k) {
  mmnet::NetworkParams p = mmnet::paper_defaults();
  p.psi = psi;
  p.k = k;
  return p;
}

void BM_InterferenceKernel(benchmark::State& state) {
  const mmnet::NetworkParams p = mmnet::paper_defaults();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        mmnet::lambda_kernel(10.0, 0.5, 0.1, 3, p, kQuad));
  }
}
BENCHMARK(BM_InterferenceKernel);

void BM_CoverageProbability(benchmark::State& state) {
  const mmnet::CoverageQuery q{mmnet::db_to_linear(10.0),
                               at(4.0, static_cast<int>(state.range(0)))};
  for (auto _ : state) {
    benchmark::DoNotOptimize(mmnet::coverage_probability(q, kQuad));
  }
}
BENCHMARK(BM_CoverageProbability)->Arg(1)->Arg(12);

void BM_CoefficientTable(benchmark::State& state) {
  const mmnet::NetworkParams p = at(4.0, 1);
  const int degree = mmnet::choose_degree(p.psi, p.mu, 1e-8);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        mmnet::compute_coefficients(mmnet::db_to_linear(10.0), p, degree, kQuad));
  }
}
BENCHMARK(BM_CoefficientTable);

void BM_CoverageTableBuild(benchmark::State& state) {
  const mmnet::NetworkParams p = at(4.0, 4);
  for (auto _ : state) {
    mmnet::CoverageTable table(p, kQuad);
    benchmark::DoNotOptimize(table(10.0));
  }
}
BENCHMARK(BM_CoverageTableBuild)->Unit(benchmark::kMillisecond);

void BM_McCoverageBatch(benchmark::State& state) {
  const mmnet::CoverageQuery q{mmnet::db_to_linear(10.0), at(4.0, 4)};
  mmnet::McConfig mc;
  mc.trials = state.range(0);
  mc.seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mmnet::simulate_coverage(q, mc));
  }
}
BENCHMARK(BM_McCoverageBatch)->Arg(4096)->Arg(65536)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

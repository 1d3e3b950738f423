#include <benchmark/benchmark.h>

#include "maser/model.hpp"
#include "maser/params.hpp"
#include "maser/steady_state.hpp"
#include "maser/synchronization.hpp"

namespace {

maser::MaserParams off_resonant_params() {
  maser::MaserParams prm{};
  prm.delta = 0.05;
  return prm;
}

maser::MaserParams resonant_params() {
  maser::MaserParams prm{};
  prm.delta = 0.0;
  return prm;
}

void BM_VectorizeGenerator(benchmark::State& state) {
  const maser::MaserParams prm = off_resonant_params();
  for (auto _ : state) {
    benchmark::DoNotOptimize(maser::vectorize_generator(prm));
  }
}
BENCHMARK(BM_VectorizeGenerator);

void BM_NullspaceSolve(benchmark::State& state) {
  const maser::MaserParams prm = off_resonant_params();
  for (auto _ : state) {
    benchmark::DoNotOptimize(maser::numeric_steady_state(prm));
  }
}
BENCHMARK(BM_NullspaceSolve);

void BM_AnalyticSolve(benchmark::State& state) {
  const maser::MaserParams prm = resonant_params();
  for (auto _ : state) {
    benchmark::DoNotOptimize(maser::analytic_steady_state(prm));
  }
}
BENCHMARK(BM_AnalyticSolve);

void BM_SmaxNumeric(benchmark::State& state) {
  const maser::MaserParams prm = off_resonant_params();
  const maser::Matrix4 rho = maser::numeric_steady_state(prm).rho;
  const int grid = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(maser::smax_numeric(rho, grid));
  }
}
BENCHMARK(BM_SmaxNumeric)->Arg(64)->Arg(256);

void BM_PhaseDistribution(benchmark::State& state) {
  const maser::MaserParams prm = off_resonant_params();
  const maser::Matrix4 rho = maser::numeric_steady_state(prm).rho;
  const int grid = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(maser::phase_distribution(rho, grid));
  }
}
BENCHMARK(BM_PhaseDistribution)->Arg(64)->Arg(256);

void BM_ShortEvolve(benchmark::State& state) {
  const maser::MaserParams prm = off_resonant_params();
  maser::EvolveOptions opts{};
  opts.tol = 1e-8;
  opts.t_final = 50.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(maser::evolve_to_steady_state(prm, opts));
  }
}
BENCHMARK(BM_ShortEvolve);

}  // namespace

BENCHMARK_MAIN();

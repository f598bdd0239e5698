#include <benchmark/benchmark.h>

#include "singosc/evolution.hpp"
#include "singosc/invariant.hpp"
#include "singosc/oracle.hpp"
#include "singosc/states.hpp"

using namespace singosc;

static void BM_DiscreteSeries(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(build_discrete_series(0.75, state.range(0)));
}
BENCHMARK(BM_DiscreteSeries)->Arg(64)->Arg(256);

static void BM_InvariantRoutes(benchmark::State& state) {
  const auto prof = FrequencyProfile::power_law(1.0, 2.0);
  const GTriple g{1.0, 0.0, 1.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate_invariant_ode(prof, g, 1.0, 11.0, 1e-12));
    benchmark::DoNotOptimize(solve_ermakov(prof, g, 1.0, 11.0, 1e-12));
    benchmark::DoNotOptimize(propagate_invariant_trajectory(prof, g, 1.0, 11.0, 1e-12));
  }
}
BENCHMARK(BM_InvariantRoutes)->Unit(benchmark::kMillisecond);

static void BM_WeiNormanAssembly(benchmark::State& state) {
  const auto prof = FrequencyProfile::power_law(1.0, 2.0);
  const auto rep = build_discrete_series(0.75, state.range(0));
  for (auto _ : state) {
    const auto wn = integrate_wei_norman_K(prof, 1.0, 1.0, 1.7, 1e-12, KRoute::riccati, 2);
    benchmark::DoNotOptimize(assemble_U_K(rep, wn, 1.7));
  }
}
BENCHMARK(BM_WeiNormanAssembly)->Arg(64)->Arg(96)->Unit(benchmark::kMillisecond);

static void BM_DirectEvolution(benchmark::State& state) {
  const auto prof = FrequencyProfile::power_law(1.0, 2.0);
  const auto rep = build_discrete_series(0.75, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(direct_evolution_run(rep, prof, 1.0, 1.0, 1.7, 1e-8));
}
BENCHMARK(BM_DirectEvolution)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_CrankNicolson(benchmark::State& state) {
  const RadialGrid grid{16.0, state.range(0)};
  const auto ops = build_grid_operators(grid, 1.0);
  const ComplexVector psi0 = eigenfunction(0, 1.25, 1.0, grid).cast<cplx>();
  const auto prof = FrequencyProfile::constant(2.0);
  for (auto _ : state) benchmark::DoNotOptimize(schrodinger_grid_evolution(ops, prof, psi0, 0.0, 0.1, 1e-3));
  state.SetItemsProcessed(state.iterations() * 100);
}
BENCHMARK(BM_CrankNicolson)->Arg(2048)->Arg(8192)->Unit(benchmark::kMillisecond);

static void BM_LRouteOnGrid(benchmark::State& state) {
  const RadialGrid grid{16.0, state.range(0)};
  const auto ops = build_grid_operators(grid, 0.0);
  const auto wl = integrate_wei_norman_L(FrequencyProfile::power_law(1.0, 2.0), 1.0, 1.5, 1e-12, 2);
  const ComplexVector psi0 = eigenfunction(0, 0.75, 1.0, grid).cast<cplx>();
  for (auto _ : state) benchmark::DoNotOptimize(apply_wei_norman_L(ops, wl, 1, psi0));
}
BENCHMARK(BM_LRouteOnGrid)->Arg(1024)->Arg(2048)->Unit(benchmark::kMillisecond);

static void BM_GridSpectrum(benchmark::State& state) {
  const auto ops = build_grid_operators(RadialGrid{12.0, state.range(0)}, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(grid_spectrum(ops, 1.0, 11));
}
BENCHMARK(BM_GridSpectrum)->Arg(2000)->Arg(8000)->Unit(benchmark::kMillisecond);

static void BM_Eigenfunction(benchmark::State& state) {
  const RadialGrid grid{16.0, 4096};
  for (auto _ : state) benchmark::DoNotOptimize(eigenfunction(static_cast<int>(state.range(0)), 0.75, 1.0, grid));
}
BENCHMARK(BM_Eigenfunction)->Arg(0)->Arg(30);

static void BM_SqueezeOperator(benchmark::State& state) {
  const auto rep = build_discrete_series(0.75, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(squeeze_operator(rep, cplx{0.4, 0.3}));
}
BENCHMARK(BM_SqueezeOperator)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();

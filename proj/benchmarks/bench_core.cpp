#include <memory>

#include <benchmark/benchmark.h>

#include "sqcd/dynamics.hpp"
#include "sqcd/random.hpp"
#include "sqcd/torus.hpp"
#include "sqcd/weyl.hpp"

namespace {

using namespace sqcd;

void BM_BesselJ0(benchmark::State& state) {
  double x = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bessel_j0(x));
    x = x > 200.0 ? 0.0 : x + 0.37;
  }
}
BENCHMARK(BM_BesselJ0);

void BM_OrbitSum(benchmark::State& state) {
  const TorusConfig cfg = TorusConfig::special(1.0, 2.0 * std::numbers::pi, 2.0 * std::numbers::pi);
  const int kmax = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(orbit_sum_exact(2.5, cfg, kmax));
}
BENCHMARK(BM_OrbitSum)->Arg(10)->Arg(40);

void BM_Spectrum(benchmark::State& state) {
  const TorusConfig cfg = TorusConfig::special(1.0, 2.0 * std::numbers::pi, 2.0 * std::numbers::pi);
  const int nmax = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(exact_eigenvalues(cfg, nmax, true));
}
BENCHMARK(BM_Spectrum)->Arg(20)->Arg(60)->Unit(benchmark::kMillisecond);

void BM_SmoothedCompare(benchmark::State& state) {
  const TorusConfig cfg = TorusConfig::special(1.0, 2.0 * std::numbers::pi, 2.0 * std::numbers::pi);
  std::vector<double> grid;
  for (int i = 0; i <= 70; ++i) grid.push_back(1.5 + 0.05 * i);
  for (auto _ : state) benchmark::DoNotOptimize(smoothed_compare(cfg, grid, 0.2, 60, 40));
}
BENCHMARK(BM_SmoothedCompare)->Unit(benchmark::kMillisecond);

void BM_WongFlow(benchmark::State& state) {
  const auto alg = std::make_shared<const LieAlgebraRep>(LieAlgebraRep::su(3));
  CounterRng rng(1, 0);
  RMatrix a(4, alg->size());
  for (int i = 0; i < a.size(); ++i) a.data()[i] = 0.5 * rng.normal();
  const GaugeField field = GaugeField::constant(alg, a, 1.0);
  ClassicalState s0;
  s0.p = RVector::Constant(4, 0.7);
  s0.x = RVector::Zero(4);
  s0.C = colour_reference(*alg, WeylConfig{});
  s0.s = Vec3(0.0, 0.0, 0.5);
  const int steps = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(
        integrate_wong(s0, field, {}, steps * 1e-3, 1e-3, HamiltonianKind::WongPlus, steps));
  state.SetItemsProcessed(state.iterations() * steps);
}
BENCHMARK(BM_WongFlow)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_PhiQuadrature(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(phi_d(2.0, 0.1, 4));
}
BENCHMARK(BM_PhiQuadrature);

void BM_PhiClosedForm(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(phi_4_closed(2.0, 0.1));
}
BENCHMARK(BM_PhiClosedForm);

void BM_MonteCarloTriple(benchmark::State& state) {
  const WeylConfig cfg;
  const auto samples = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(mc_density_triple(1.0, 0.5, cfg, samples, 7));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MonteCarloTriple)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

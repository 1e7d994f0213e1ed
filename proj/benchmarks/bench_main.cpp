#include <benchmark/benchmark.h>

#include <cmath>

#include "nkdv/closed_form.hpp"
#include "nkdv/elliptic.hpp"
#include "nkdv/grid.hpp"
#include "nkdv/hamiltonian_ode.hpp"
#include "nkdv/operator_lab.hpp"
#include "nkdv/pde_sim.hpp"

namespace {

using namespace nkdv;

void BM_Jacobi(benchmark::State& state) {
  const elliptic::Modulus k(0.9);
  double x = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(elliptic::jacobi(x, k));
    x += 1e-3;
  }
}
BENCHMARK(BM_Jacobi);

void BM_Derivative(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Grid g = Grid::periodic_over(0.0, 2.0 * M_PI, n);
  const auto f = GridFunction::sample(g, [](double x) { return std::sin(x); });
  for (auto _ : state) benchmark::DoNotOptimize(derivative(f, 3, Accuracy::fourth));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Derivative)->Arg(256)->Arg(4096);

void BM_Leapfrog(benchmark::State& state) {
  const auto p = TravelingWaveParams::make(-1.0, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate(p, {1.3, 0.0, 0.0}, 1e-3, 10000, Integrator::leapfrog, {1e8, 100}));
  }
}
BENCHMARK(BM_Leapfrog);

void BM_PdeStep(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Grid g = Grid::decaying_over(-30.0, 30.0, n);
  const auto u = GridFunction::sample(g, [](double x) { return std::sqrt(2.0) / std::cosh(x); });
  const auto s = SimState::make(u, Closure::decaying, Gauge::anchored, 1e-300);
  for (auto _ : state) benchmark::DoNotOptimize(step(s, 0.5 * g.dx));
}
BENCHMARK(BM_PdeStep)->Arg(1201)->Arg(6001);

void BM_EigenSmallest(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Grid g = Grid::periodic_over(0.0, 2.0 * M_PI, n);
  const auto u = GridFunction::sample(g, [](double x) { return 1.5 + std::cos(x); });
  const auto p = PotentialData::from_u(u);
  for (auto _ : state) benchmark::DoNotOptimize(eigen_smallest(p, 3));
}
BENCHMARK(BM_EigenSmallest)->Arg(128)->Arg(512);

}  // namespace

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include "motifsearch/expectation.hpp"
#include "motifsearch/mps.hpp"
#include "motifsearch/symmetric.hpp"

using namespace motifsearch;

static void BM_ClosedFormCorrelation(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Angles ang{0.35, 0.9};
  for (auto _ : state) {
    const double v = expval_translational(ang, n, Observable::zz, n / 2);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_ClosedFormCorrelation)->RangeMultiplier(2)->Range(8, 512);

static void BM_DenseCorrelation(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Angles ang{0.35, 0.9};
  const StateVector psi = mps_to_state(mps_matrices(ang), n, MpsForm::translational);
  const Hamiltonian h = build(Model::tfim, n, 1.0, 0.5);
  for (auto _ : state) {
    const double v = energy_per_site(psi, h);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_DenseCorrelation)->DenseRange(4, 12, 2);

static void BM_SymmetrizedProjection(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Angles ang{0.3, 1.2};
  for (auto _ : state) {
    const DickeState d = project_symmetric(ang, n);
    benchmark::DoNotOptimize(d.amps.data());
  }
}
BENCHMARK(BM_SymmetrizedProjection)->RangeMultiplier(2)->Range(16, 256)->Complexity();

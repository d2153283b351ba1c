#include <benchmark/benchmark.h>

#include <random>

#include "motifsearch/evolution.hpp"
#include "motifsearch/network.hpp"
#include "motifsearch/statevector.hpp"

using namespace motifsearch;

static void BM_EvaluateOriginal(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const NetworkProgram prog = instantiate(ansatz_original(), n);
  const std::vector<double> params{0.7, 0.3};
  for (auto _ : state) {
    StateVector s = evaluate_network(prog, params);
    benchmark::DoNotOptimize(s.amps.data());
  }
  state.SetComplexityN(int64_t{1} << n);
}
BENCHMARK(BM_EvaluateOriginal)->DenseRange(3, 12)->Complexity();

static void BM_ApplyTwoSite(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  StateVector s = init_state(n);
  const auto m = tensor_matrix(*find_pool_spec("eZY"), std::vector<double>{0.4});
  const int sites[] = {0, n / 2};
  for (auto _ : state) {
    apply_tensor(s, m, sites);
    benchmark::DoNotOptimize(s.amps.data());
  }
}
BENCHMARK(BM_ApplyTwoSite)->DenseRange(4, 14, 2);

static void BM_FitnessEvaluation(benchmark::State& state) {
  SearchConfig cfg;
  cfg.sizes = {3, 4, 5};
  cfg.eval_opt = OptimizerConfig{3, 400, 1e-8, 0};
  const Motif m = ansatz_original();
  for (auto _ : state) {
    const Individual ind = evaluate_individual(m, cfg);
    benchmark::DoNotOptimize(ind.fitness);
  }
}
BENCHMARK(BM_FitnessEvaluation)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include "qfridge/experiments.hpp"

using namespace qfridge;

namespace {

FridgeModel model_for(int tag) {
  const ModelTag t = tag == 0 ? ModelTag::I : tag == 1 ? ModelTag::II : ModelTag::III;
  ParameterSet p{{"E1", 1}, {"E2", 3}, {"Tc", 1}, {"Tr", 1}, {"Th", 4}, {"p1", 1e-3}, {"g", 1e-3}};
  if (t == ModelTag::III) {
    p["p_h"] = p["p_r"] = 1e-3;
  } else {
    p["p2"] = p["p3"] = 1e-3;
  }
  if (t == ModelTag::II) p["h"] = 1e-3;
  return build_model(t, p);
}

void BM_BuildLiouvillian(benchmark::State& state) {
  const FridgeModel m = model_for(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_liouvillian(m));
}
BENCHMARK(BM_BuildLiouvillian)->DenseRange(0, 2);

void BM_SteadyState(benchmark::State& state) {
  const FridgeModel m = model_for(static_cast<int>(state.range(0)));
  const Liouvillian l = build_liouvillian(m);
  for (auto _ : state) benchmark::DoNotOptimize(steady_state(l));
}
BENCHMARK(BM_SteadyState)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

// one RK4 step from the maximally mixed state
void BM_EvolveStep(benchmark::State& state) {
  const FridgeModel m = model_for(static_cast<int>(state.range(0)));
  const int d = m.shape().total_dim();
  const ComplexMatrix rho = ComplexMatrix::Identity(d, d) / double(d);
  EvolveOptions o;
  o.dt = 0.01;
  o.t_final = o.dt;
  for (auto _ : state) benchmark::DoNotOptimize(evolve(m, rho, o));
}
BENCHMARK(BM_EvolveStep)->DenseRange(0, 2);

}  // namespace

BENCHMARK_MAIN();

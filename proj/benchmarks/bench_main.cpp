#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "mfm/analytic.hpp"
#include "mfm/correlation.hpp"
#include "mfm/market.hpp"
#include "mfm/multifractal.hpp"
#include "mfm/rng.hpp"
#include "mfm/tail.hpp"

namespace {

mfm::ModelConfig market_config(std::size_t n_agents, mfm::SensitivitySpec mu) {
  mfm::ModelConfig config;
  config.n_agents = n_agents;
  config.mu_spec = mu;
  config.tau = 1000;
  config.t_steps = 100000;
  return config;
}

std::vector<double> pareto_sample(std::size_t n, double alpha) {
  mfm::Rng rng(3);
  std::vector<double> v(n);
  for (auto& x : v) x = std::pow(1.0 - rng.uniform(), -1.0 / alpha);
  return v;
}

std::vector<double> random_walk(std::size_t n) {
  mfm::Rng rng(5);
  std::vector<double> p(n);
  double x = 0.0;
  for (auto& v : p) {
    v = std::exp(x);
    x += 0.01 * rng.normal();
  }
  return p;
}

void BM_StepHeterogeneous(benchmark::State& state) {
  mfm::MarketState market(market_config(state.range(0), mfm::UniformHeterogeneous{10.0, 200.0}));
  for (auto _ : state) benchmark::DoNotOptimize(market.step());
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_StepHeterogeneous)->Arg(2000)->Arg(10000);

void BM_StepHomogeneous(benchmark::State& state) {
  mfm::MarketState market(market_config(state.range(0), mfm::Homogeneous{100.0}));
  for (auto _ : state) benchmark::DoNotOptimize(market.step());
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_StepHomogeneous)->Arg(20000);

void BM_OptimalK(benchmark::State& state) {
  const auto v = pareto_sample(state.range(0), 3.0);
  for (auto _ : state) benchmark::DoNotOptimize(mfm::optimal_k(v, mfm::TailSign::Positive));
}
BENCHMARK(BM_OptimalK)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_KummerSeries(benchmark::State& state) {
  double z = -1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mfm::kummer_m(2.0, 3.0, z));
    z = z < -29.0 ? -1.0 : z - 0.5;
  }
}
BENCHMARK(BM_KummerSeries);

void BM_KummerIncompleteGamma(benchmark::State& state) {
  double z = -31.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mfm::kummer_m(2.0, 3.0, z));
    z = z < -400.0 ? -31.0 : z - 7.0;
  }
}
BENCHMARK(BM_KummerIncompleteGamma);

void BM_ClosedFormDensity(benchmark::State& state) {
  const mfm::ClosedFormDensity f(1.5);
  double r = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(f(r));
    r = r > 30.0 ? 0.1 : r * 1.1;
  }
}
BENCHMARK(BM_ClosedFormDensity);

void BM_MixtureDensity(benchmark::State& state) {
  const auto mix = mfm::make_mixture(1.5, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(mfm::mixture_density(2.0, mix));
}
BENCHMARK(BM_MixtureDensity)->Arg(1000)->Arg(10000);

void BM_Autocorrelation(benchmark::State& state) {
  const auto v = pareto_sample(state.range(0), 3.0);
  for (auto _ : state) benchmark::DoNotOptimize(mfm::autocorrelation(v, 100));
}
BENCHMARK(BM_Autocorrelation)->Arg(200000)->Unit(benchmark::kMillisecond);

void BM_StructureFunctions(benchmark::State& state) {
  const auto p = random_walk(state.range(0));
  const std::vector<double> q = {1, 2, 3, 4, 5, 6};
  const auto lags = mfm::geometric_lags(1, 2000, 40);
  for (auto _ : state) benchmark::DoNotOptimize(mfm::structure_functions(p, q, lags));
}
BENCHMARK(BM_StructureFunctions)->Arg(200000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

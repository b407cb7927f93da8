#include <benchmark/benchmark.h>

#include "ev/numerics.hpp"
#include "ev/rng.hpp"

namespace {

// Sampler throughput: every simulation replication draws thousands of
// variates, so these set the floor for harness runtimes.

void rng_normal(benchmark::State& state) {
  ev::RngStream rng(1, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rng.normal(0.0, 1.0));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(rng_normal);

void rng_exponential(benchmark::State& state) {
  ev::RngStream rng(2, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rng.exponential(1.0));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(rng_exponential);

void rng_gamma(benchmark::State& state) {
  ev::RngStream rng(3, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rng.gamma(6.0, 0.2));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(rng_gamma);

// Special functions: the multiple-testing harness calls gamma_quantile once
// per alternative hypothesis per replication (5e5 calls per 10^3-rep run).

void normal_quantile_fn(benchmark::State& state) {
  double p = 0.0001;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ev::normal_quantile(p));
    p = p < 0.999 ? p + 0.0007 : 0.0001;
  }
}
BENCHMARK(normal_quantile_fn);

void gamma_quantile_fn(benchmark::State& state) {
  double u = 0.01;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ev::gamma_quantile(u, 6.0, 1.0 / 6.0));
    u = u < 0.999 ? u + 0.0007 : 0.01;
  }
}
BENCHMARK(gamma_quantile_fn);

}  // namespace

BENCHMARK_MAIN();

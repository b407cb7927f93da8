#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "ev/ebh.hpp"
#include "ev/rng.hpp"

namespace {

// Boosting factors: the closed-form log-concave pair and the generic
// bisection against a survival function (the exact-distribution factor
// used by the multiple-testing harness, K = 1000).

void boost_lcs_ad(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(ev::boost_lcs_ad(0.05));
  }
}
BENCHMARK(boost_lcs_ad);

void boost_generic_exp_null(benchmark::State& state) {
  const auto survival = [](double x) { return std::exp(-x); };
  for (auto _ : state) {
    benchmark::DoNotOptimize(ev::boost_generic_ad(
        survival, 0.05, 1000, ev::BoostCriterion::full_t));
  }
}
BENCHMARK(boost_generic_exp_null);

// e-BH on a K-vector: sorting dominates.  The input mixes sub-threshold
// bulk with a heavy right tail, matching what the simulation feeds it.

void ebh_reject_k(benchmark::State& state) {
  const int K = static_cast<int>(state.range(0));
  ev::RngStream rng(99, 0);
  std::vector<double> e(static_cast<std::size_t>(K));
  for (auto& v : e) {
    const double theta = rng.exponential(0.2);
    v = rng.gamma(1.0 + theta, 1.0 / (1.0 + theta));
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(ev::ebh_reject(e, 0.1));
  }
  state.SetItemsProcessed(state.iterations() * K);
}
BENCHMARK(ebh_reject_k)->Arg(100)->Arg(1000)->Arg(10000)->ArgNames({"K"});

void t_transform_scalar(benchmark::State& state) {
  double x = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ev::t_transform(x, 1000));
    x = x < 1e6 ? x * 1.5 : 1.0;
  }
}
BENCHMARK(t_transform_scalar);

}  // namespace

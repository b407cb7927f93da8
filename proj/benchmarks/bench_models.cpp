#include <benchmark/benchmark.h>

#include <vector>

#include "ev/models.hpp"
#include "ev/rng.hpp"

namespace {

std::vector<double> gamma_sample(int n, double shape, double rate,
                                 unsigned seed) {
  ev::RngStream rng(seed, 0);
  std::vector<double> data(static_cast<std::size_t>(n));
  for (auto& x : data) x = rng.gamma(shape, rate);
  return data;
}

std::vector<double> mixture_sample(int n, double mu, unsigned seed) {
  ev::RngStream rng(seed, 0);
  std::vector<double> data(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double center = (i % 2 == 0) ? mu : -mu;
    data[i] = rng.normal(center, 1.0);
  }
  return data;
}

// Constrained gamma MLE: profile likelihood with golden-section + Newton.
// This is the inner loop of the gamma type-I/power simulations.

void gamma_mle_constrained(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto data = gamma_sample(n, 2.0, 1.0, 41);
  const ev::GammaRegion region{ev::GammaRegionKind::shape_up_rate_down, 2.0,
                               1.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(ev::gamma_constrained_mle(data, region));
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(gamma_mle_constrained)->Arg(10)->Arg(50)->Arg(500)->ArgNames({"n"});

void gamma_sup_statistic(benchmark::State& state) {
  const auto data = gamma_sample(50, 2.0, 1.0, 42);
  const ev::GammaRegion region{ev::GammaRegionKind::shape_up_rate_down, 2.0,
                               1.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(ev::gamma_sup_stat(data, region));
  }
}
BENCHMARK(gamma_sup_statistic);

// EM fits: the universal-inference harness fits one mixture per replication.

void em_mixture_fit(benchmark::State& state) {
  const auto model = static_cast<ev::MixtureModel>(state.range(1));
  const auto data = mixture_sample(static_cast<int>(state.range(0)), 1.2, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ev::em_fit_gaussian_mixture(data, model));
  }
}
BENCHMARK(em_mixture_fit)
    ->Args({200, static_cast<int>(ev::MixtureModel::two_means_unit_var)})
    ->Args({200, static_cast<int>(ev::MixtureModel::full_five_param)})
    ->ArgNames({"n", "model"});

void ui_split_likelihood_ratio(benchmark::State& state) {
  const auto data = mixture_sample(400, 1.2, 8);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        ev::ui_split_lrt(data, 0.5, ev::MixtureModel::two_means_unit_var));
  }
}
BENCHMARK(ui_split_likelihood_ratio);

}  // namespace

#include <benchmark/benchmark.h>

#include <iterator>

#include "ev/eclass.hpp"
#include "ev/thresholds.hpp"

namespace {

// Closed-form tail bounds and thresholds across the class lattice.  These
// are the building blocks every caller touches, so regressions here matter
// even at nanosecond scale.

void worst_case_all_classes(benchmark::State& state) {
  const double gamma = 0.05;
  for (auto _ : state) {
    for (const ev::EClass cls : ev::kAllClasses) {
      benchmark::DoNotOptimize(ev::worst_case_error(cls, gamma));
    }
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<int64_t>(std::size(ev::kAllClasses)));
}
BENCHMARK(worst_case_all_classes);

void threshold_all_classes(benchmark::State& state) {
  const double alpha = 0.05;
  for (auto _ : state) {
    for (const ev::EClass cls : ev::kAllClasses) {
      benchmark::DoNotOptimize(ev::threshold(cls, alpha));
    }
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<int64_t>(std::size(ev::kAllClasses)));
}
BENCHMARK(threshold_all_classes);

// Root-solving classes in isolation: LDGT0 solves t(1 - ln t) = gamma and
// LCS solves exp(L) = gamma L + 1 on every call.

void worst_case_root_solved(benchmark::State& state) {
  const ev::EClass cls = static_cast<ev::EClass>(state.range(0));
  double gamma = 0.001;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ev::worst_case_error(cls, gamma));
    gamma = gamma < 0.4 ? gamma * 1.07 : 0.001;  // sweep the level
  }
}
BENCHMARK(worst_case_root_solved)
    ->Arg(static_cast<int>(ev::EClass::LDGT0))
    ->Arg(static_cast<int>(ev::EClass::LCS))
    ->ArgNames({"class"});

// Generic inversion (bisection on the tail bound) versus the closed form.

void threshold_by_inversion_u(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(ev::threshold_by_inversion(ev::EClass::U, 0.05));
  }
}
BENCHMARK(threshold_by_inversion_u);

void calibrate_ln(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(ev::calibrate(ev::EClass::LN, 25.0));
  }
}
BENCHMARK(calibrate_ln);

}  // namespace

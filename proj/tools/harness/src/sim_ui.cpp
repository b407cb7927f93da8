#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "harness/parallel.hpp"
#include "harness/scenarios.hpp"
#include "ev/eclass.hpp"
#include "ev/models.hpp"
#include "ev/rng.hpp"
#include "ev/thresholds.hpp"

namespace harness {

namespace {

ev::MixtureModel model_from_config(const std::string& name) {
  if (name == "full") return ev::MixtureModel::full_five_param;
  if (name == "symmetric") return ev::MixtureModel::symmetric_two_means;
  if (name == "two-means") return ev::MixtureModel::two_means_unit_var;
  throw ConfigError("model must be full, symmetric, or two-means");
}

}  // namespace

CsvTable run_ui(Config& cfg) {
  const long long reps = cfg.get_int("replications", 10000);
  const std::uint64_t seed = cfg.get_uint64("seed", 1);
  const int threads = resolve_threads(cfg.get_int("threads", 0));
  const double alpha = cfg.get_double("alpha", 0.1);
  const std::vector<double> signal_grid =
      cfg.get_double_list("signal_grid", {0.0, 0.2, 0.4, 0.6, 0.8, 1.0, 1.2});
  const long long fit_size = cfg.get_int("fit_size", 200);
  const long long eval_size = cfg.get_int("eval_size", 200);
  const ev::MixtureModel model =
      model_from_config(cfg.get_string("model", "full"));
  cfg.finish();

  if (reps < 1) throw ConfigError("replications must be at least 1");
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
  if (fit_size < 4) throw ConfigError("fit_size must be at least 4");
  if (eval_size < 1) throw ConfigError("eval_size must be at least 1");
  if (signal_grid.empty()) throw ConfigError("signal_grid must be nonempty");
  for (double mu : signal_grid) {
    if (mu < 0.0) throw ConfigError("signal_grid entries must be nonnegative");
  }

  // Threshold rules for the split likelihood ratio: assumption-free,
  // decreasing-density, and decreasing-positive-log-density.
  const struct {
    const char* label;
    ev::EClass cls;
  } rules[] = {{"E0", ev::EClass::E0},
               {"D", ev::EClass::D},
               {"LDGT0", ev::EClass::LDGT0}};
  double thresholds[3];
  for (int i = 0; i < 3; ++i) {
    thresholds[i] = ev::threshold(rules[i].cls, alpha).value;
  }

  CsvTable out;
  out.header = {"scenario", "mu",    "threshold", "n_fit",
                "n_eval",   "metric", "value",     "se"};

  const std::size_t total_n =
      static_cast<std::size_t>(fit_size + eval_size);
  for (double mu : signal_grid) {
    std::vector<std::vector<std::uint32_t>> counts(
        static_cast<std::size_t>(threads), std::vector<std::uint32_t>(3, 0));
    parallel_reps(reps, threads, [&](long long rep, int worker) {
      ev::RngStream rng(seed, static_cast<std::uint64_t>(rep));
      std::vector<double> data(total_n);
      for (double& x : data) {
        const double center = rng.uniform() < 0.5 ? -mu : mu;
        x = rng.normal(center, 1.0);
      }
      const std::span<const double> all(data);
      const ev::MixtureFit fit =
          ev::em_fit_gaussian_mixture(all.subspan(0, static_cast<std::size_t>(fit_size)),
                                      model);
      const double e = ev::ui_lr_evalue(
          fit, all.subspan(static_cast<std::size_t>(fit_size)));
      auto& local = counts[static_cast<std::size_t>(worker)];
      for (int i = 0; i < 3; ++i) {
        if (e >= thresholds[i]) ++local[static_cast<std::size_t>(i)];
      }
    });

    const double R = static_cast<double>(reps);
    for (int i = 0; i < 3; ++i) {
      std::uint64_t total = 0;
      for (const auto& local : counts) total += local[static_cast<std::size_t>(i)];
      const double rate = static_cast<double>(total) / R;
      const double se = std::sqrt(rate * (1.0 - rate) / R);
      out.rows.push_back({"universal-inference", format_number(mu),
                          rules[i].label, format_number(fit_size),
                          format_number(eval_size), "rejection_rate",
                          format_number(rate), format_number(se)});
    }
  }
  return out;
}

}  // namespace harness

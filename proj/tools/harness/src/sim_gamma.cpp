#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "harness/parallel.hpp"
#include "harness/scenarios.hpp"
#include "ev/models.hpp"
#include "ev/rng.hpp"

namespace harness {

namespace {

struct AlphaThreshold {
  double alpha;
  double log_thr;  // ln(1/alpha)
};

}  // namespace

CsvTable run_gamma(Config& cfg) {
  const long long reps = cfg.get_int("replications", 10000);
  const std::uint64_t seed = cfg.get_uint64("seed", 1);
  const int threads = resolve_threads(cfg.get_int("threads", 0));
  const std::vector<double> alphas =
      cfg.get_double_list("alphas", {0.01, 0.05});
  std::vector<long long> default_n;
  for (long long n = 2; n <= 50; ++n) default_n.push_back(n);
  const std::vector<long long> n_grid = cfg.get_int_list("n_grid", default_n);
  const double null_shape = cfg.get_double("null_shape", 1.0);
  const double null_rate = cfg.get_double("null_rate", 1.0);
  const double alt_shape = cfg.get_double("alt_shape", 1.1);
  const double alt_rate = cfg.get_double("alt_rate", 0.9);
  const bool include_power = cfg.get_bool("include_power", true);
  const std::vector<long long> power_n_grid =
      cfg.get_int_list("power_n_grid", n_grid);
  cfg.finish();

  if (reps < 1) throw ConfigError("replications must be at least 1");
  if (alphas.empty()) throw ConfigError("alphas must be nonempty");
  for (double a : alphas) {
    if (!(a > 0.0 && a < 1.0)) throw ConfigError("alphas must lie in (0, 1)");
  }
  if (n_grid.empty()) throw ConfigError("n_grid must be nonempty");
  for (long long n : n_grid) {
    if (n < 2) throw ConfigError("n_grid entries must be at least 2");
  }
  if (!(null_shape > 0.0 && null_rate > 0.0 && alt_shape > 0.0 &&
        alt_rate > 0.0)) {
    throw ConfigError("shape and rate parameters must be positive");
  }

  std::vector<AlphaThreshold> levels;
  for (double a : alphas) levels.push_back({a, std::log(1.0 / a)});

  const ev::GammaRegionKind regions[] = {
      ev::GammaRegionKind::full_quadrant,
      ev::GammaRegionKind::shape_up_rate_down,
      ev::GammaRegionKind::shape_down_rate_up,
  };

  CsvTable out;
  out.header = {"scenario", "data", "statistic", "alpha",
                "n",        "metric", "value",   "se"};

  const double R = static_cast<double>(reps);
  const auto emit = [&](const std::string& data, const std::string& stat,
                        double alpha, long long n, const char* metric,
                        std::uint64_t count) {
    const double rate = static_cast<double>(count) / R;
    const double se = std::sqrt(rate * (1.0 - rate) / R);
    out.rows.push_back({"gamma", data, stat, format_number(alpha),
                        format_number(n), metric, format_number(rate),
                        format_number(se)});
  };

  // Null phase: type-I error of each region supremum at each level and n.
  {
    std::vector<long long> sorted_n = n_grid;
    std::sort(sorted_n.begin(), sorted_n.end());
    const long long max_n = sorted_n.back();
    const std::size_t slots = 3 * levels.size() * sorted_n.size();
    std::vector<std::vector<std::uint32_t>> counts(
        static_cast<std::size_t>(threads),
        std::vector<std::uint32_t>(slots, 0));

    parallel_reps(reps, threads, [&](long long rep, int worker) {
      ev::RngStream rng(seed, static_cast<std::uint64_t>(rep));
      auto& local = counts[static_cast<std::size_t>(worker)];
      ev::EProcessState stats;
      std::size_t grid_pos = 0;
      for (long long n = 1; n <= max_n; ++n) {
        stats.add_positive(rng.gamma(null_shape, null_rate));
        if (grid_pos < sorted_n.size() && n == sorted_n[grid_pos]) {
          for (std::size_t r = 0; r < 3; ++r) {
            ev::GammaRegion region{regions[r], null_shape, null_rate};
            const double log_sup = ev::gamma_log_sup_stat(stats, region);
            for (std::size_t a = 0; a < levels.size(); ++a) {
              if (log_sup >= levels[a].log_thr) {
                ++local[(r * levels.size() + a) * sorted_n.size() + grid_pos];
              }
            }
          }
          ++grid_pos;
        }
      }
    });

    std::vector<std::uint64_t> total(slots, 0);
    for (const auto& local : counts) {
      for (std::size_t i = 0; i < slots; ++i) total[i] += local[i];
    }
    for (std::size_t r = 0; r < 3; ++r) {
      const std::string stat =
          "sup_" + std::string(ev::to_string(regions[r]));
      for (std::size_t a = 0; a < levels.size(); ++a) {
        for (std::size_t g = 0; g < sorted_n.size(); ++g) {
          emit("null", stat, levels[a].alpha, sorted_n[g], "type1_rate",
               total[(r * levels.size() + a) * sorted_n.size() + g]);
        }
      }
    }
  }

  // Power phase: region supremum versus the fixed-alternative likelihood
  // ratio when data really come from the alternative.
  if (include_power) {
    std::vector<long long> sorted_n = power_n_grid;
    std::sort(sorted_n.begin(), sorted_n.end());
    if (sorted_n.empty() || sorted_n.front() < 2) {
      throw ConfigError("power_n_grid entries must be at least 2");
    }
    const long long max_n = sorted_n.back();
    const std::size_t slots = 2 * levels.size() * sorted_n.size();
    std::vector<std::vector<std::uint32_t>> counts(
        static_cast<std::size_t>(threads),
        std::vector<std::uint32_t>(slots, 0));

    parallel_reps(reps, threads, [&](long long rep, int worker) {
      ev::RngStream rng(seed, static_cast<std::uint64_t>(rep));
      auto& local = counts[static_cast<std::size_t>(worker)];
      ev::EProcessState stats;
      std::size_t grid_pos = 0;
      const ev::GammaRegion up{ev::GammaRegionKind::shape_up_rate_down,
                               null_shape, null_rate};
      for (long long n = 1; n <= max_n; ++n) {
        stats.add_positive(rng.gamma(alt_shape, alt_rate));
        if (grid_pos < sorted_n.size() && n == sorted_n[grid_pos]) {
          const double stat_vals[2] = {
              ev::gamma_log_sup_stat(stats, up),
              ev::gamma_log_lr(alt_shape, alt_rate, up, stats),
          };
          for (std::size_t s = 0; s < 2; ++s) {
            for (std::size_t a = 0; a < levels.size(); ++a) {
              if (stat_vals[s] >= levels[a].log_thr) {
                ++local[(s * levels.size() + a) * sorted_n.size() + grid_pos];
              }
            }
          }
          ++grid_pos;
        }
      }
    });

    std::vector<std::uint64_t> total(slots, 0);
    for (const auto& local : counts) {
      for (std::size_t i = 0; i < slots; ++i) total[i] += local[i];
    }
    const std::string stats_labels[2] = {
        "sup_" + std::string(ev::to_string(
                     ev::GammaRegionKind::shape_up_rate_down)),
        "lr_fixed"};
    for (std::size_t s = 0; s < 2; ++s) {
      for (std::size_t a = 0; a < levels.size(); ++a) {
        for (std::size_t g = 0; g < sorted_n.size(); ++g) {
          emit("alt", stats_labels[s], levels[a].alpha, sorted_n[g], "power",
               total[(s * levels.size() + a) * sorted_n.size() + g]);
        }
      }
    }
  }
  return out;
}

}  // namespace harness

#include <algorithm>
#include <cmath>
#include <cstdint>
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

// One statistic/threshold/stopping combination tracked through a replication.
struct Pair {
  std::string test;       // lr<mu>, sup, or mixture
  double mu_test = 0.0;   // alternative mean for lr tests
  int kind = 0;           // 0 = lr, 1 = sup, 2 = mixture
  std::string threshold;  // threshold rule label
  double log_thr = 0.0;
  bool running_max = false;  // optional stopping: rolling maximum vs 1/alpha
};

std::string lr_label(double mu) {
  std::string s = "lr" + format_number(mu);
  return s;
}

}  // namespace

CsvTable run_gaussian(Config& cfg) {
  const long long reps = cfg.get_int("replications", 10000);
  const std::uint64_t seed = cfg.get_uint64("seed", 1);
  const int threads = resolve_threads(cfg.get_int("threads", 0));
  const double alpha = cfg.get_double("alpha", 0.05);
  const std::vector<double> data_mus =
      cfg.get_double_list("data_mu", {0.3, 0.0});
  const std::vector<long long> n_grid =
      cfg.get_int_list("n_grid", {10, 50, 100, 500});
  const std::vector<double> beta_grid =
      cfg.get_double_list("beta_grid", {0.5, 0.9, 0.95, 0.99});
  const std::vector<double> mu_tests =
      cfg.get_double_list("mu_tests", {0.2, 0.3, 0.4});
  cfg.finish();

  if (reps < 1) throw ConfigError("replications must be at least 1");
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
  if (n_grid.empty()) throw ConfigError("n_grid must be nonempty");
  for (long long n : n_grid) {
    if (n < 1) throw ConfigError("n_grid entries must be positive");
  }
  for (double beta : beta_grid) {
    if (!(beta > 0.0 && beta < 1.0)) {
      throw ConfigError("beta_grid entries must lie in (0, 1)");
    }
  }
  for (double mu : mu_tests) {
    if (!(mu > 0.0)) throw ConfigError("mu_tests entries must be positive");
  }
  const long long max_n = *std::max_element(n_grid.begin(), n_grid.end());

  // Threshold rules applied to fixed-n statistics, in report order.
  const struct {
    const char* label;
    ev::EClass cls;
  } rules[] = {{"E0", ev::EClass::E0},
               {"U", ev::EClass::U},
               {"LUS", ev::EClass::LUS},
               {"LN", ev::EClass::LN}};

  // Build the tracked pairs: every statistic against every applicable rule,
  // plus optional-stopping rows (rolling maximum against 1/alpha) for the
  // e-processes. The supremum statistic is not an e-process, so it gets no
  // optional-stopping row; the mixture is not log-symmetric, so it is only
  // paired with the assumption-free and unimodal rules.
  std::vector<Pair> pairs;
  const auto add_fixed = [&](const std::string& test, double mu_t, int kind,
                             bool log_symmetric) {
    for (const auto& rule : rules) {
      if (!log_symmetric &&
          (rule.cls == ev::EClass::LUS || rule.cls == ev::EClass::LN)) {
        continue;
      }
      Pair p;
      p.test = test;
      p.mu_test = mu_t;
      p.kind = kind;
      p.threshold = rule.label;
      p.log_thr = std::log(ev::threshold(rule.cls, alpha).value);
      pairs.push_back(std::move(p));
    }
  };
  const auto add_os = [&](const std::string& test, double mu_t, int kind) {
    Pair p;
    p.test = test;
    p.mu_test = mu_t;
    p.kind = kind;
    p.threshold = "E0";
    p.log_thr = std::log(1.0 / alpha);
    p.running_max = true;
    pairs.push_back(std::move(p));
  };
  for (double mu : mu_tests) add_fixed(lr_label(mu), mu, 0, true);
  add_fixed("sup", 0.0, 1, true);
  add_fixed("mixture", 0.0, 2, false);
  for (double mu : mu_tests) add_os(lr_label(mu), mu, 0);
  add_os("mixture", 0.0, 2);

  const std::size_t n_pairs = pairs.size();
  const std::size_t slots = n_pairs * static_cast<std::size_t>(max_n);

  CsvTable out;
  out.header = {"scenario", "data_mu", "test",  "threshold", "stopping",
                "n",        "beta",    "metric", "value",    "se"};

  for (double data_mu : data_mus) {
    // counts[worker][pair * max_n + (n-1)] = rejections at exactly n.
    std::vector<std::vector<std::uint32_t>> counts(
        static_cast<std::size_t>(threads),
        std::vector<std::uint32_t>(slots, 0));

    parallel_reps(reps, threads, [&](long long rep, int worker) {
      ev::RngStream rng(seed, static_cast<std::uint64_t>(rep));
      std::vector<std::uint32_t>& local = counts[static_cast<std::size_t>(worker)];
      ev::EProcessState state;
      std::vector<double> run_max(n_pairs, -1e308);
      for (long long n = 1; n <= max_n; ++n) {
        state.add_gaussian(rng.normal(data_mu, 1.0));
        double log_e[3];  // by statistic kind; lr recomputed per mu below
        log_e[1] = std::log(ev::gaussian_sup_stat(state));
        log_e[2] = std::log(ev::gaussian_mixture_evalue(state));
        double last_mu = -1.0;
        double lr_log = 0.0;
        for (std::size_t p = 0; p < n_pairs; ++p) {
          const Pair& pair = pairs[p];
          double le;
          if (pair.kind == 0) {
            if (pair.mu_test != last_mu) {
              lr_log = std::log(ev::gaussian_lr_evalue(pair.mu_test, state));
              last_mu = pair.mu_test;
            }
            le = lr_log;
          } else {
            le = log_e[pair.kind];
          }
          bool reject;
          if (pair.running_max) {
            double& rm = run_max[p];
            rm = std::max(rm, le);
            reject = rm >= pair.log_thr;
          } else {
            reject = le >= pair.log_thr;
          }
          if (reject) {
            ++local[p * static_cast<std::size_t>(max_n) +
                    static_cast<std::size_t>(n - 1)];
          }
        }
      }
    });

    // Merge worker counts (integer sums are order-independent).
    std::vector<std::uint64_t> total(slots, 0);
    for (const auto& local : counts) {
      for (std::size_t i = 0; i < slots; ++i) total[i] += local[i];
    }

    const double R = static_cast<double>(reps);
    for (std::size_t p = 0; p < n_pairs; ++p) {
      const Pair& pair = pairs[p];
      const std::string stopping = pair.running_max ? "os" : "fixed";
      const auto count_at = [&](long long n) {
        return total[p * static_cast<std::size_t>(max_n) +
                     static_cast<std::size_t>(n - 1)];
      };
      for (long long n : n_grid) {
        const double rate = static_cast<double>(count_at(n)) / R;
        const double se = std::sqrt(rate * (1.0 - rate) / R);
        out.rows.push_back({"gaussian", format_number(data_mu), pair.test,
                            pair.threshold, stopping, format_number(n), "",
                            "rejection_rate", format_number(rate),
                            format_number(se)});
      }
      for (double beta : beta_grid) {
        long long first = -1;
        for (long long n = 1; n <= max_n; ++n) {
          if (static_cast<double>(count_at(n)) / R >= beta) {
            first = n;
            break;
          }
        }
        out.rows.push_back({"gaussian", format_number(data_mu), pair.test,
                            pair.threshold, stopping, "", format_number(beta),
                            "n_to_power", format_number(first), ""});
      }
    }
  }
  return out;
}

}  // namespace harness

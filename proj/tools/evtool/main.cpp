#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <iterator>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ev/ebh.hpp"
#include "ev/eclass.hpp"
#include "ev/thresholds.hpp"
#include "harness/config.hpp"
#include "harness/csv.hpp"
#include "harness/scenarios.hpp"
#include "harness/tables.hpp"

namespace {

constexpr int kExitValidation = 2;

const char* kind_name(ev::BoundKind kind) {
  return kind == ev::BoundKind::exact ? "exact" : "conservative";
}

const char* regime_name(ev::BoostRegime regime) {
  return regime == ev::BoostRegime::AD ? "ad" : "pr";
}

const char* criterion_name(ev::BoostCriterion criterion) {
  return criterion == ev::BoostCriterion::full_t ? "full" : "relaxed";
}

/** Writes a table to the named file, or to stdout for "-". */
void emit_table(const harness::CsvTable& table, const std::string& out_path) {
  if (out_path == "-") {
    table.write(std::cout);
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + out_path);
  table.write(out);
  if (!out) throw std::runtime_error("failed writing output file: " + out_path);
}

/** Reads the one-column e-value CSV (header `e`). A file with no content at
 *  all is treated as zero e-values. */
std::vector<double> read_e_values(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open input file: " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  bool blank = true;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) {
      blank = false;
      break;
    }
  }
  if (blank) return {};
  const harness::CsvTable table = harness::parse_csv(text);
  if (table.header.size() != 1 || table.header[0] != "e") {
    throw std::runtime_error("input must be a one-column CSV with header 'e'");
  }
  std::vector<double> e;
  e.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(row[0], &used);
    } catch (const std::exception&) {
      throw std::runtime_error("not a number in input CSV: '" + row[0] + "'");
    }
    if (used != row[0].size()) {
      throw std::runtime_error("not a number in input CSV: '" + row[0] + "'");
    }
    e.push_back(value);
  }
  return e;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"e-value thresholds, calibration, boosting, and e-BH tools"};
  app.require_subcommand(1);

  // threshold --class <name> --alpha <x>
  std::string thr_class;
  double thr_alpha = 0.0;
  CLI::App* thr = app.add_subcommand(
      "threshold", "Improved rejection threshold for a class at level alpha");
  thr->add_option("--class", thr_class, "e-variable class name")->required();
  thr->add_option("--alpha", thr_alpha, "significance level in (0,1)")
      ->required();
  thr->callback([&] {
    const ev::BoundedValue v =
        ev::threshold(ev::eclass_from_string(thr_class), thr_alpha);
    std::printf("%.10g kind=%s\n", v.value, kind_name(v.kind));
  });

  // worst-case --class <name> --gamma <x>
  std::string wc_class;
  double wc_gamma = 0.0;
  CLI::App* wc = app.add_subcommand(
      "worst-case", "Worst-case type-I error of the threshold 1/gamma");
  wc->add_option("--class", wc_class, "e-variable class name")->required();
  wc->add_option("--gamma", wc_gamma, "inverse threshold in (0,1]")->required();
  wc->callback([&] {
    const ev::BoundedValue v =
        ev::worst_case_error(ev::eclass_from_string(wc_class), wc_gamma);
    std::printf("%.10g kind=%s\n", v.value, kind_name(v.kind));
  });

  // calibrate --class <name> --e <x>
  std::string cal_class;
  double cal_e = 0.0;
  CLI::App* cal = app.add_subcommand(
      "calibrate", "Smallest p-value implied by an observed e-value");
  cal->add_option("--class", cal_class, "e-variable class name")->required();
  cal->add_option("--e", cal_e, "observed e-value (>= 0)")->required();
  cal->callback([&] {
    std::printf("%.10g\n",
                ev::calibrate(ev::eclass_from_string(cal_class), cal_e));
  });

  // boost {lcs-ad|lcs-pr|generic} ...
  CLI::App* boost =
      app.add_subcommand("boost", "Boosting factors for the e-BH procedure");
  boost->require_subcommand(1);

  double lcs_ad_alpha = 0.0;
  CLI::App* lcs_ad = boost->add_subcommand(
      "lcs-ad",
      "Closed-form factors for log-concave-survival nulls, arbitrary "
      "dependence");
  lcs_ad->add_option("--alpha", lcs_ad_alpha, "significance level in (0,1)")
      ->required();
  lcs_ad->callback([&] {
    const ev::BoostResult r = ev::boost_lcs_ad(lcs_ad_alpha);
    std::printf("lower=%.10g upper=%.10g regime=%s criterion=%s\n", r.lower,
                r.upper, regime_name(r.regime), criterion_name(r.criterion));
  });

  double lcs_pr_alpha = 0.0;
  CLI::App* lcs_pr = boost->add_subcommand(
      "lcs-pr",
      "Closed-form factors for log-concave-survival nulls under positive "
      "regression dependence");
  lcs_pr->add_option("--alpha", lcs_pr_alpha, "significance level in (0,1)")
      ->required();
  lcs_pr->callback([&] {
    const ev::BoostResult r = ev::boost_lcs_pr(lcs_pr_alpha);
    std::printf("lower=%.10g upper=%.10g regime=%s criterion=%s\n", r.lower,
                r.upper, regime_name(r.regime), criterion_name(r.criterion));
  });

  double gen_alpha = 0.0;
  std::string gen_null = "exp1";
  long long gen_k = 1000;
  std::string gen_criterion = "full";
  std::string gen_regime = "ad";
  CLI::App* gen = boost->add_subcommand(
      "generic", "Numerically solved factor for a named null distribution");
  gen->add_option("--alpha", gen_alpha, "significance level in (0,1)")
      ->required();
  gen->add_option("--null", gen_null, "null e-value distribution (exp1)");
  gen->add_option("--K", gen_k, "number of hypotheses (default 1000)");
  gen->add_option("--criterion", gen_criterion,
                  "boosting criterion: full | relaxed (default full)");
  gen->add_option("--regime", gen_regime,
                  "dependence regime: ad | pr (default ad)");
  gen->callback([&] {
    if (gen_null != "exp1") {
      throw std::invalid_argument("unknown null distribution '" + gen_null +
                                  "' (supported: exp1)");
    }
    if (gen_k < 1 || gen_k > 100000000) {
      throw std::invalid_argument("--K must be a positive hypothesis count");
    }
    const auto survival = [](double x) {
      return x <= 0.0 ? 1.0 : std::exp(-x);
    };
    ev::GenericBoost result{};
    if (gen_regime == "ad") {
      ev::BoostCriterion criterion;
      if (gen_criterion == "full") {
        criterion = ev::BoostCriterion::full_t;
      } else if (gen_criterion == "relaxed") {
        criterion = ev::BoostCriterion::relaxed;
      } else {
        throw std::invalid_argument("unknown criterion '" + gen_criterion +
                                    "' (expected full or relaxed)");
      }
      result = ev::boost_generic_ad(survival, gen_alpha,
                                    static_cast<int>(gen_k), criterion);
    } else if (gen_regime == "pr") {
      result =
          ev::boost_generic_pr(survival, gen_alpha, static_cast<int>(gen_k));
    } else {
      throw std::invalid_argument("unknown regime '" + gen_regime +
                                  "' (expected ad or pr)");
    }
    std::printf("value=%.10g saturated=%s\n", result.value,
                result.saturated ? "true" : "false");
  });

  // ebh --input <csv> --alpha <x> [--boost <factor>]
  std::string ebh_input;
  double ebh_alpha = 0.0;
  double ebh_boost = 1.0;
  CLI::App* ebh = app.add_subcommand(
      "ebh", "e-BH discovery set for a CSV of e-values (header 'e')");
  ebh->add_option("--input", ebh_input, "one-column CSV of e-values")
      ->required();
  ebh->add_option("--alpha", ebh_alpha, "target FDR level in (0,1)")
      ->required();
  ebh->add_option("--boost", ebh_boost,
                  "multiply every e-value by this factor (default 1)");
  ebh->callback([&] {
    if (!(ebh_boost > 0.0)) {
      throw std::invalid_argument("--boost must be positive");
    }
    std::vector<double> e = read_e_values(ebh_input);
    if (e.empty()) {
      std::printf("discoveries=0\n");
      return;
    }
    for (double& v : e) v *= ebh_boost;
    const ev::DiscoverySet d = ev::ebh_reject(e, ebh_alpha);
    std::printf("discoveries=%d\n", d.k_star);
    if (!d.rejected.empty()) {
      std::string joined;
      for (int idx : d.rejected) {
        if (!joined.empty()) joined += ",";
        joined += std::to_string(idx);
      }
      std::printf("rejected=%s\n", joined.c_str());
    }
  });

  // simulate <scenario> --config <json> --out <csv> [--seed] [--threads]
  std::string sim_scenario;
  std::string sim_config;
  std::string sim_out;
  long long sim_seed = -1;
  long long sim_threads = -1;
  CLI::App* sim = app.add_subcommand(
      "simulate", "Run a seeded Monte Carlo scenario and write CSV rows");
  sim->add_option("scenario", sim_scenario,
                  "gaussian | universal-inference | gamma | ebh")
      ->required();
  sim->add_option("--config", sim_config, "JSON configuration file")
      ->required();
  sim->add_option("--out", sim_out, "output CSV path ('-' for stdout)")
      ->required();
  sim->add_option("--seed", sim_seed, "override the config seed")
      ->check(CLI::NonNegativeNumber);
  sim->add_option("--threads", sim_threads, "override the worker count")
      ->check(CLI::PositiveNumber);
  sim->callback([&] {
    harness::Config cfg = harness::Config::from_file(sim_config);
    if (sim_seed >= 0) cfg.override_int("seed", sim_seed);
    if (sim_threads > 0) cfg.override_int("threads", sim_threads);
    const harness::CsvTable table = harness::run_scenario(sim_scenario, cfg);
    emit_table(table, sim_out);
  });

  // table {1|2|7}
  int table_id = 0;
  std::string table_out = "-";
  CLI::App* tab = app.add_subcommand(
      "table", "Regenerate a reference table (1: thresholds, 2: boosting "
               "factors, 7: averaging thresholds)");
  tab->add_option("id", table_id, "table number: 1, 2, or 7")->required();
  tab->add_option("--out", table_out, "output CSV path ('-' for stdout)");
  tab->callback(
      [&] { emit_table(harness::make_table(table_id), table_out); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // prints help, exit 0
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    std::cerr << "run with --help for usage\n";
    return kExitValidation;
  } catch (const harness::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    std::cerr << "run with --help for usage\n";
    return kExitValidation;
  } catch (const std::domain_error& e) {
    std::cerr << "invalid value: " << e.what() << "\n";
    std::cerr << "run with --help for usage\n";
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    std::cerr << "run with --help for usage\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return 0;
}

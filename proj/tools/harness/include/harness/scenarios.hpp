#pragma once

#include <string>
#include <vector>

#include "harness/config.hpp"
#include "harness/csv.hpp"

namespace ev {
class RngStream;
}

namespace harness {

/** Gaussian one-sample study: rejection rates of likelihood-ratio,
 *  mixture, and supremum statistics against four threshold rules, with and
 *  without optional stopping, plus sample sizes needed to reach target
 *  power. Keys: replications, seed, threads, alpha, data_mu, n_grid,
 *  beta_grid, mu_tests. */
CsvTable run_gaussian(Config& cfg);

/** Universal-inference (split likelihood ratio) study: power per signal and
 *  threshold rule at level alpha. Keys: replications, seed, threads, alpha,
 *  signal_grid, fit_size, eval_size, model. */
CsvTable run_ui(Config& cfg);

/** Gamma-family supremum study: type-I error per parameter region and
 *  level under the null, plus power of the region supremum against a
 *  fixed-alternative likelihood ratio. Keys: replications, seed, threads,
 *  alphas, n_grid, null_shape, null_rate, alt_shape, alt_rate,
 *  include_power, power_n_grid. */
CsvTable run_gamma(Config& cfg);

/** Multiple-testing study on equicorrelated e-values: discoveries and
 *  realized false discovery proportion for the base, boosted, and p-value
 *  baseline procedures. Keys: replications, seed, threads, alphas,
 *  signal_b, K, K0. */
CsvTable run_ebh(Config& cfg);

/** Dispatch by scenario name: gaussian, universal-inference, gamma, ebh.
 *  Throws ConfigError for unknown names. */
CsvTable run_scenario(const std::string& name, Config& cfg);

/** K standard normal coordinates with every pairwise correlation equal to
 *  -1/(K-1), built by centering K iid draws and rescaling by
 *  sqrt(1 - 1/K). Exposed for direct distributional checks. */
std::vector<double> equicorrelated_normals(ev::RngStream& rng, int K);

}  // namespace harness

#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace ev {

/** Running sufficient statistics of an e-process. Gaussian statistics use n
 *  and S (the running sum); gamma statistics additionally use sum_log. All
 *  fields update additively, so accumulation order does not matter. */
struct EProcessState {
  long long n = 0;
  double S = 0.0;        // sum of observations
  double sum_log = 0.0;  // sum of log observations (gamma models)

  void add_gaussian(double x) {
    ++n;
    S += x;
  }
  void add_positive(double x);  // adds x and log x; requires x > 0
};

/** Likelihood-ratio e-value exp(mu*S - n*mu^2/2) for testing N(0,1) against
 *  N(mu,1). Multiplicative over data batches. */
double gaussian_lr_evalue(double mu, const EProcessState& state);

/** Mixture e-value (n+1)^{-1/2} exp(S^2/(2n+2)): the likelihood-ratio
 *  mixture under a standard normal prior on mu. Returns 1 at n = 0. */
double gaussian_mixture_evalue(const EProcessState& state);

/** Supremum statistic Y(n) = exp(max(S,0)^2/(2n)): the pointwise supremum of
 *  gaussian_lr_evalue over mu > 0. Requires n >= 1. */
double gaussian_sup_stat(const EProcessState& state);

/** Exact type-I error of the test that rejects when Y(n) >= 1/alpha under
 *  the null: 1 - Phi(sqrt(-2 ln alpha)), the same for every n. */
double gaussian_sup_type1(double alpha);

/** Exponential-family description used by the comonotonicity check: the
 *  natural-parameter map, the monotone direction of each summary-statistic
 *  component in the observation (+1 increasing, -1 decreasing), and the
 *  log-partition function. */
struct ExpFamSpec {
  std::function<std::vector<double>(const std::vector<double>&)> eta;
  std::vector<int> t_monotone;
  std::function<double(const std::vector<double>&)> log_partition;
};

/** Axis-aligned parameter region: one {lower, upper} interval per parameter
 *  component (infinities allowed; treated as open at infinite ends). */
struct ParamRegion {
  std::vector<std::pair<double, double>> bounds;
};

/** True iff the likelihood-ratio family indexed by the region is comonotone:
 *  every component of eta(theta) - eta(theta0) keeps one sign across the
 *  region, and the induced directions of the summary components (sign times
 *  monotone direction) all agree. Checked on an interior tensor grid of the
 *  region. Throws std::invalid_argument for malformed regions. */
bool expfam_comonotone(const ExpFamSpec& spec,
                       const std::vector<double>& theta0,
                       const ParamRegion& region);

/** Constraint regions for the gamma testing problem with null (shape0,
 *  rate0): the full positive quadrant, the quadrant with larger shape and
 *  smaller rate, or the quadrant with smaller shape and larger rate. */
enum class GammaRegionKind { full_quadrant, shape_up_rate_down, shape_down_rate_up };

std::string_view to_string(GammaRegionKind kind);
GammaRegionKind gamma_region_from_string(std::string_view name);

struct GammaRegion {
  GammaRegionKind kind = GammaRegionKind::full_quadrant;
  double null_shape = 1.0;
  double null_rate = 1.0;
};

/** Constrained maximum-likelihood estimate of gamma (shape, rate). */
struct GammaMle {
  double shape;
  double rate;
  bool on_boundary;  // estimate sits on the region boundary
  bool degenerate;   // all observations equal; boundary fit with a warning
};

/** Maximize the gamma log-likelihood over the closed region. Profile method:
 *  for fixed shape a the optimal rate is a/mean clipped to the region's rate
 *  interval; the shape is then found by golden-section search polished with
 *  Newton steps on the profile stationarity equation (tolerance 1e-10).
 *  Requires n >= 2 and strictly positive data. */
GammaMle gamma_constrained_mle(const std::vector<double>& data, const GammaRegion& region);
GammaMle gamma_constrained_mle(const EProcessState& stats, const GammaRegion& region);

/** Log likelihood-ratio of gamma(shape, rate) against the region's null,
 *  accumulated over the observations summarized by stats. */
double gamma_log_lr(double shape, double rate, const GammaRegion& region,
                    const EProcessState& stats);

/** Fixed-alternative likelihood-ratio e-value (exp of gamma_log_lr). */
double gamma_lr_evalue(double shape, double rate, const GammaRegion& region,
                       const EProcessState& stats);

/** Supremum e-statistic over the region: the likelihood ratio evaluated at
 *  the constrained MLE. Log version provided for overflow-safe comparisons. */
double gamma_log_sup_stat(const EProcessState& stats, const GammaRegion& region);
double gamma_sup_stat(const std::vector<double>& data, const GammaRegion& region);

/** Two-component Gaussian mixture models fit by EM:
 *  - two_means_unit_var: free means, unit variances, weights 1/2
 *  - symmetric_two_means: means ±mu, unit variances, weights 1/2
 *  - full_five_param: free weight, means, and variances */
enum class MixtureModel { two_means_unit_var, symmetric_two_means, full_five_param };

std::string_view to_string(MixtureModel model);
MixtureModel mixture_model_from_string(std::string_view name);

struct MixtureFit {
  double weight = 0.5;  // first component
  double mu1 = 0.0;
  double mu2 = 0.0;
  double sigma1 = 1.0;
  double sigma2 = 1.0;
  double loglik = 0.0;
  int iterations = 0;
  bool converged = false;
  bool flagged = false;  // variance collapse persisted through restarts
  /** Log-likelihood after each iteration of the accepted run (ascending). */
  std::vector<double> loglik_trace;
};

/** Mixture log-density at x under the fit. */
double mixture_log_density(const MixtureFit& fit, double x);

/** Total log-likelihood of the data under the fit. */
double mixture_loglik(const MixtureFit& fit, std::span<const double> data);

/** Fit the chosen mixture model by EM. Deterministic initialization: sort
 *  the sample, split at the median, and start from the two half-means.
 *  Stops at relative log-likelihood change < 1e-8 or 500 iterations. If a
 *  variance collapses below 1e-6 (full model) the fit restarts from a
 *  deterministically perturbed initialization, at most 5 times, after which
 *  the result carries the flagged bit. Requires n >= 4. */
MixtureFit em_fit_gaussian_mixture(std::span<const double> data, MixtureModel model);

/** Likelihood ratio of a fitted alternative against N(0,1) over the given
 *  evaluation sample (log-space accumulation). */
double ui_lr_evalue(const MixtureFit& fit, std::span<const double> eval);

/** Universal-inference split likelihood ratio: fit the alternative by EM on
 *  the leading floor(split_fraction * n) observations and evaluate the
 *  likelihood ratio on the rest. Both halves must be nonempty. */
double ui_split_lrt(std::span<const double> data, double split_fraction,
                    MixtureModel model);

}  // namespace ev

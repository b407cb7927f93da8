#pragma once

#include <functional>
#include <vector>

namespace ev {

/** Dependence regime a boosting factor is valid under: arbitrary dependence
 *  or positive regression dependence on a subset (PRDS). */
enum class BoostRegime { AD, PRDS };

/** Which boosting criterion produced a factor: the exact expectation of the
 *  discretized T transform, or its relaxation E[x 1{x>=1}] <= alpha. */
enum class BoostCriterion { full_t, relaxed };

/** Closed-form boosting bounds: a pair lower <= upper bracketing the optimal
 *  factor for the class, tagged with regime and criterion. Both are >= 1. */
struct BoostResult {
  double lower;
  double upper;
  BoostRegime regime;
  BoostCriterion criterion;
};

/** Result of a generic boosting solve; saturated marks the bounded-support
 *  convention where the criterion holds strictly for every factor up to the
 *  bracket cap (10^6), which is then returned. */
struct GenericBoost {
  double value;
  bool saturated;
};

/** Rejection set of the e-BH procedure at level alpha on K hypotheses. */
struct DiscoverySet {
  std::vector<int> rejected;  // indices into the input e-vector
  int k_star = 0;
  double alpha = 0.0;
  int K = 0;
};

/** Discretization T(x) = K/ceil(K/x) for x >= 1, 0 below 1, K at infinity.
 *  Always <= x on x >= 1. */
double t_transform(double x, int K);

/** e-BH: sort the e-values descending, take k* = max{k : e_(k) >= K/(alpha
 *  k)} (0 if none), and reject the k* hypotheses with the largest e-values.
 *  Ties at the boundary are all inside the rejection set. */
DiscoverySet ebh_reject(const std::vector<double>& e, double alpha);

/** Boosting bounds under arbitrary dependence for nulls with log-concave
 *  survival functions: lower and upper are the roots b of
 *  exp(-1/(alpha b))(1 + alpha b) = alpha/e and = alpha, clamped to >= 1. */
BoostResult boost_lcs_ad(double alpha);

/** Boosting bounds under PRDS for log-concave survival nulls:
 *  lower = 1/(alpha(1 - ln alpha)); upper = e for alpha >= 1/e, otherwise
 *  -1/(alpha ln alpha). */
BoostResult boost_lcs_pr(double alpha);

/** Largest factor c in [1, 10^6] whose boosted null expectation stays below
 *  alpha under arbitrary dependence, for a null with survival function
 *  S(x) = P(E >= x). full_t evaluates E[T(alpha c E)] as an exact K-term sum
 *  of survival differences; relaxed evaluates E[alpha c E 1{alpha c E >= 1}]
 *  by adaptive tail quadrature (relative tolerance 1e-8). Bisection to 1e-9.
 *  Returns 1 when even c = 1 violates the criterion. */
GenericBoost boost_generic_ad(const std::function<double(double)>& survival,
                              double alpha, int K, BoostCriterion criterion);

/** PRDS analogue: the criterion is max over the grid x in {K/k : k in [K]}
 *  of x * S(x/(alpha c)) <= alpha. */
GenericBoost boost_generic_pr(const std::function<double(double)>& survival,
                              double alpha, int K);

/** Realized false discovery proportion: |rejected ∩ nulls| / max(1,
 *  |rejected|). nulls holds the indices of the true-null hypotheses. */
double fdp(const DiscoverySet& discoveries, const std::vector<int>& nulls);

}  // namespace ev

#pragma once

#include <vector>

#include "ev/eclass.hpp"

namespace ev {

/** One factor of a product of e-values: its distributional class plus the
 *  structural facts the product rules key on. A decreasing density with mode
 *  at zero implies multiplicative strong unimodality, so constructing with
 *  decreasing_mode_at_zero set forces msu as well. */
struct FactorSpec {
  EClass cls = EClass::E0;
  bool msu = false;                     // multiplicative strong unimodality
  bool decreasing_mode_at_zero = false; // decreasing density, mode at 0
  bool independent = false;             // independent of the running product
  bool sequential = false;              // e-value conditional on the prefix

  static FactorSpec make(EClass cls, bool msu, bool decreasing_mode_at_zero,
                         bool independent, bool sequential);
};

/** Class of the running product of the factors:
 *  D when the last factor is independent of the prefix with a decreasing
 *  density with mode at zero and all earlier factors are sequential; U when
 *  all factors are independent and MSU; otherwise E0. The first rule is
 *  checked before the second (it yields the tighter class). Nonempty input
 *  required. */
EClass product_class(const std::vector<FactorSpec>& factors);

/** Class of 1 - lambda + lambda*E for E in the given class, lambda in
 *  [0, 1]. The map preserves D, U, LCD, and LCF; every other class degrades
 *  to E0. lambda = 1 is the identity, lambda = 0 yields the constant 1
 *  (classified LCF). */
EClass lambda_transform_class(EClass cls, double lambda);

/** Simplex weights for an average of e-values; records the minimum entry. */
struct WeightVector {
  std::vector<double> weights;

  explicit WeightVector(std::vector<double> w);
  double min_weight() const { return min_weight_; }

 private:
  double min_weight_;
};

/** Tail bound for a weighted average of T independent e-values with
 *  log-concave densities: min of the exponential bound
 *  gamma^{-w(1)} * exp(-w(1)(1/gamma - 1)) and the unimodal worst case
 *  R_gamma(U). Requires weights of length T. */
double avg_tail_bound(int T, const WeightVector& weights, double gamma);

/** Smallest t >= 1 with avg_tail_bound(T, equal weights, 1/t) <= alpha:
 *  the root of the exponential branch, capped by threshold(U, alpha). */
double avg_threshold(int T, double alpha);

}  // namespace ev

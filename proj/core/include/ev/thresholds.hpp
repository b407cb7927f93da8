#pragma once

#include <functional>

#include "ev/eclass.hpp"

namespace ev {

/** Whether a reported bound is the exact worst case over the class or a
 *  conservative (valid but possibly loose) envelope. */
enum class BoundKind { exact, conservative };

/** A worst-case error or threshold value, tagged with its sharpness, the
 *  class it refers to, and the argument (gamma or alpha) it was computed
 *  at. */
struct BoundedValue {
  double value;
  BoundKind kind;
  EClass cls;
  double arg;
};

/** Worst-case type-I error R_gamma(C) = sup P(E >= 1/gamma) over e-variables
 *  E in class C, for gamma in (0, 1]. Exact for every class except LUS, LD,
 *  and LCD, whose values are conservative envelopes (minima of the available
 *  upper bounds). */
BoundedValue worst_case_error(EClass cls, double gamma);

/** Improved rejection threshold T_alpha(C) = inf{t >= 1 : R_{1/t}(C) <=
 *  alpha} for alpha in (0, 1), in closed form. Conservative exactly when the
 *  underlying worst-case envelope is. */
BoundedValue threshold(EClass cls, double alpha);

/** Smallest e-to-p calibrator on the class: maps an observed e-value to the
 *  p-value min(1, R_{1/e}(C)). Accepts any e >= 0 (including infinity, which
 *  maps to 0); e <= 1 maps to 1. */
double calibrate(EClass cls, double e);

/** Probability assigned by a distribution function at a point: evaluates the
 *  supplied cdf. Exists so that exact tail computations share one entry
 *  point. */
double precise_p(const std::function<double(double)>& cdf, double x);

/** Generic inversion of worst_case_error: smallest t >= 1 with
 *  R_{1/t}(C) <= alpha, found by root solving instead of closed forms.
 *  Used to cross-check threshold(). Requires alpha in (0, 1/2). */
double threshold_by_inversion(EClass cls, double alpha);

}  // namespace ev

#pragma once

#include <functional>

namespace ev {

/** Search interval for find_root. The solver stops once the bracket width
 *  falls below tol (absolute) or it hits an exact zero. */
struct Bracket {
  double lo;
  double hi;
  double tol = 1e-12;
};

/** Outcome of a root search: abscissa, residual f(x), and evaluation count. */
struct RootResult {
  double x = 0.0;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

/** Locate a root of f inside [lo, hi] with a safeguarded secant iteration that
 *  falls back to bisection whenever the secant step leaves the bracket or
 *  fails to shrink it enough. The endpoints must straddle a sign change (an
 *  exact zero at either endpoint is accepted); otherwise throws
 *  std::invalid_argument. Non-finite function values throw std::runtime_error.
 *  Spends at most 200 iterations. */
RootResult find_root(const std::function<double(double)>& f, Bracket bracket);

/** Standard normal cumulative distribution function, via erfc. */
double normal_cdf(double x);

/** Standard normal quantile for p in (0, 1) (Wichura's AS 241, double
 *  precision branch); mutual inverse of normal_cdf to ~1e-15. */
double normal_quantile(double p);

/** Digamma function for x > 0: recurrence shift to x >= 10 followed by the
 *  asymptotic series in 1/x^2. */
double digamma(double x);

/** Regularized lower incomplete gamma P(a, x), a > 0, x >= 0
 *  (power series for x < a + 1, Lentz continued fraction otherwise). */
double gamma_p(double a, double x);

/** Gamma(shape, rate) cumulative distribution function. */
double gamma_cdf(double x, double shape, double rate);

/** Gamma(shape, rate) quantile for p in [0, 1), by bracketed root solving
 *  on gamma_cdf; returns 0 at p = 0. */
double gamma_quantile(double p, double shape, double rate);

}  // namespace ev

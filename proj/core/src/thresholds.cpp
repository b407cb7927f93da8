#include "ev/thresholds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "ev/numerics.hpp"

namespace ev {

namespace {

constexpr double kE = std::numbers::e;

void check_gamma(double gamma) {
  if (!(gamma > 0.0 && gamma <= 1.0)) {
    throw std::domain_error("worst_case_error: gamma must lie in (0, 1]");
  }
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::domain_error("threshold: alpha must lie in (0, 1)");
  }
}

// Root t in [1, e] of t(1 - ln t) = gamma: the optimizer of the bound for
// log-decreasing densities on [0, inf).
double log_decreasing_root(double gamma) {
  const auto res = find_root(
      [gamma](double t) { return t * (1.0 - std::log(t)) - gamma; },
      Bracket{1.0, kE, 1e-13});
  return res.x;
}

// Worst case for a log-concave survival function, solved in log space:
// R = e^L with e^L = gamma*L + 1, L in (-1/gamma, ln gamma). The bracket
// endpoints have opposite signs for every gamma in (0, 1) mathematically,
// but at the left endpoint the true value e^{-1/gamma} can sink below the
// rounding noise of the product gamma * (1/gamma); in that regime the root
// is -1/gamma to machine precision, with R = e^{-1/gamma} up to a relative
// correction below 1e-14, so return it directly.
double lcs_worst_case(double gamma) {
  if (gamma == 1.0) return 1.0;
  const double lo = -1.0 / gamma;
  const auto h = [gamma](double L) { return std::exp(L) - gamma * L - 1.0; };
  if (!(h(lo) > 0.0)) {
    const double r0 = std::exp(lo);
    return std::exp(lo + r0 / gamma);
  }
  const auto res = find_root(h, Bracket{lo, std::log(gamma), 1e-13});
  return std::exp(res.x);
}

double worst_case_value(EClass cls, double gamma) {
  switch (cls) {
    case EClass::E0:
    case EClass::LU:
    case EClass::LCF:
      return gamma;
    case EClass::D:
      return gamma < 1.0 ? 0.5 * gamma : 1.0;
    case EClass::DGT1:
      return gamma / (1.0 + std::sqrt(1.0 - gamma * gamma));
    case EClass::U:
      return std::max(0.5 * gamma, 2.0 * gamma - 1.0);
    case EClass::LS:
      return gamma < 1.0 ? std::min(gamma, 0.5) : 1.0;
    case EClass::LDGT0:
      return gamma / log_decreasing_root(gamma);
    case EClass::LD:
    case EClass::LUS: {
      if (gamma == 1.0) return 1.0;
      // Minimum of every bound valid on the class; the last term is the
      // log-symmetric superclass bound, which keeps the envelope nested.
      const double exp_bound = gamma / (kE * (1.0 - gamma * gamma));
      const double dgt1 = worst_case_value(EClass::DGT1, gamma);
      const double ldgt0 = worst_case_value(EClass::LDGT0, gamma);
      const double ls = worst_case_value(EClass::LS, gamma);
      return std::min(std::min(exp_bound, dgt1), std::min(ldgt0, ls));
    }
    case EClass::LN:
      return gamma < 1.0
                 ? normal_cdf(-std::sqrt(-2.0 * std::log(gamma)))
                 : 1.0;
    case EClass::LCD:
      return std::min(worst_case_value(EClass::U, gamma),
                      lcs_worst_case(gamma));
    case EClass::LCS:
      return lcs_worst_case(gamma);
  }
  throw std::logic_error("worst_case_error: unhandled class");
}

double threshold_value(EClass cls, double alpha) {
  switch (cls) {
    case EClass::E0:
    case EClass::LU:
    case EClass::LCF:
      return 1.0 / alpha;
    case EClass::D:
      return alpha < 0.5 ? 0.5 / alpha : 1.0;
    case EClass::DGT1:
      return 0.5 / alpha + 0.5 * alpha;
    case EClass::U:
      return alpha <= 1.0 / 3.0 ? 0.5 / alpha : 2.0 / (1.0 + alpha);
    case EClass::LS:
      return alpha < 0.5 ? 1.0 / alpha : 1.0;
    case EClass::LDGT0:
      return std::exp(alpha - 1.0) / alpha;
    case EClass::LD:
    case EClass::LUS: {
      // Stable form of the exponential-bound inverse 1/gamma* with
      // gamma* = 2*alpha*e / (1 + sqrt(1 + 4 alpha^2 e^2)).
      const double ae = alpha * kE;
      const double inv_gamma_star =
          (1.0 + std::sqrt(1.0 + 4.0 * ae * ae)) / (2.0 * ae);
      const double t = std::min(
          {threshold_value(EClass::LDGT0, alpha), inv_gamma_star,
           threshold_value(EClass::DGT1, alpha),
           threshold_value(EClass::LS, alpha)});
      return std::max(1.0, t);
    }
    case EClass::LN: {
      if (alpha >= 0.5) return 1.0;
      const double q = normal_quantile(alpha);
      return std::exp(0.5 * q * q);
    }
    case EClass::LCD:
      return std::min(threshold_value(EClass::U, alpha),
                      threshold_value(EClass::LCS, alpha));
    case EClass::LCS:
      return -std::log(alpha) / (1.0 - alpha);
  }
  throw std::logic_error("threshold: unhandled class");
}

BoundKind kind_of(EClass cls) {
  switch (cls) {
    case EClass::LD:
    case EClass::LUS:
    case EClass::LCD:
      return BoundKind::conservative;
    default:
      return BoundKind::exact;
  }
}

}  // namespace

BoundedValue worst_case_error(EClass cls, double gamma) {
  check_gamma(gamma);
  return BoundedValue{worst_case_value(cls, gamma), kind_of(cls), cls, gamma};
}

BoundedValue threshold(EClass cls, double alpha) {
  check_alpha(alpha);
  return BoundedValue{threshold_value(cls, alpha), kind_of(cls), cls, alpha};
}

double calibrate(EClass cls, double e) {
  if (std::isnan(e) || e < 0.0) {
    throw std::domain_error("calibrate: e must be nonnegative");
  }
  if (e <= 1.0) return 1.0;
  if (std::isinf(e)) return 0.0;
  return std::min(1.0, worst_case_value(cls, 1.0 / e));
}

double precise_p(const std::function<double(double)>& cdf, double x) {
  return cdf(x);
}

double threshold_by_inversion(EClass cls, double alpha) {
  if (!(alpha > 0.0 && alpha < 0.5)) {
    throw std::domain_error(
        "threshold_by_inversion: alpha must lie in (0, 1/2)");
  }
  // R_{1/t} - alpha changes sign between t = 1 (where R = 1) and any t with
  // 1/t below alpha (Markov dominance caps R by 1/t).
  const double hi = 2.0 / alpha + 2.0;
  const auto res = find_root(
      [&](double t) { return worst_case_value(cls, 1.0 / t) - alpha; },
      Bracket{1.0, hi, 1e-12});
  return res.x;
}

}  // namespace ev

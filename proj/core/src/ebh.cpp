#include "ev/ebh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace ev {

namespace {

constexpr double kBoostCap = 1e6;

void check_alpha(double alpha, const char* who) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::domain_error(std::string(who) + ": alpha must lie in (0, 1)");
  }
}

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double fa, double fm, double fb, double whole,
                        double eps, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * eps) {
    return left + right + delta / 15.0;
  }
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1);
}

double integrate_segment(const std::function<double(double)>& f, double a,
                         double b, double eps) {
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, eps, 30);
}

// E[alpha*c*E 1{alpha*c*E >= 1}] from the survival function:
// alpha*c*(u*S(u) + integral_u^inf S), u = 1/(alpha*c).
double relaxed_criterion(const std::function<double(double)>& survival,
                         double alpha_c) {
  const double u = 1.0 / alpha_c;
  double tail = u * survival(u);
  double integral = 0.0;
  double a = u;
  for (int j = 0; j < 200; ++j) {
    const double b = 2.0 * a;
    const double eps = 1e-10 + 1e-9 * integral;
    const double seg = integrate_segment(survival, a, b, eps);
    integral += seg;
    if (seg <= 1e-9 * (integral + 1e-300) && b * survival(b) < 1e-13) {
      break;
    }
    a = b;
  }
  return alpha_c * (tail + integral);
}

// E[T(alpha*c*E)] as an exact sum over the discretization cells: T equals
// K/k exactly when E lies in [K/(k alpha c), K/((k-1) alpha c)).
double full_t_criterion(const std::function<double(double)>& survival,
                        double alpha_c, int K) {
  double sum = 0.0;
  double prev = 0.0;  // S at the upper cell edge (infinity for k = 1)
  for (int k = 1; k <= K; ++k) {
    const double p = survival(static_cast<double>(K) / (k * alpha_c));
    sum += static_cast<double>(K) / k * (p - prev);
    prev = p;
  }
  return sum;
}

GenericBoost solve_boost(const std::function<double(double)>& criterion,
                         double alpha) {
  if (criterion(1.0) > alpha) {
    return {1.0, false};
  }
  if (criterion(kBoostCap) <= alpha) {
    return {kBoostCap, true};
  }
  double lo = 1.0;
  double hi = kBoostCap;
  while (hi - lo > 1e-9) {
    const double mid = 0.5 * (lo + hi);
    if (criterion(mid) <= alpha) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {lo, false};
}

}  // namespace

double t_transform(double x, int K) {
  if (K < 1) {
    throw std::domain_error("t_transform: K must be at least 1");
  }
  if (std::isnan(x) || x < 0.0) {
    throw std::domain_error("t_transform: x must be nonnegative");
  }
  if (x < 1.0) return 0.0;
  if (std::isinf(x)) return static_cast<double>(K);
  return static_cast<double>(K) / std::ceil(static_cast<double>(K) / x);
}

DiscoverySet ebh_reject(const std::vector<double>& e, double alpha) {
  check_alpha(alpha, "ebh_reject");
  if (e.empty()) {
    throw std::invalid_argument("ebh_reject: needs at least one e-value");
  }
  for (double x : e) {
    if (std::isnan(x) || x < 0.0) {
      throw std::domain_error("ebh_reject: e-values must be nonnegative");
    }
  }
  const int K = static_cast<int>(e.size());

  std::vector<int> order(e.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (e[a] != e[b]) return e[a] > e[b];
    return a < b;
  });

  int k_star = 0;
  for (int k = K; k >= 1; --k) {
    if (e[order[k - 1]] >= static_cast<double>(K) / (alpha * k)) {
      k_star = k;
      break;
    }
  }

  DiscoverySet out;
  out.k_star = k_star;
  out.alpha = alpha;
  out.K = K;
  out.rejected.assign(order.begin(), order.begin() + k_star);
  std::sort(out.rejected.begin(), out.rejected.end());
  return out;
}

BoostResult boost_lcs_ad(double alpha) {
  check_alpha(alpha, "boost_lcs_ad");
  const auto root_for = [alpha](double target) {
    const auto value = [alpha](double b) {
      const double ab = alpha * b;
      return std::exp(-1.0 / ab) * (1.0 + ab);
    };
    if (value(1.0) >= target) return 1.0;
    double lo = 1.0;
    double hi = kBoostCap;
    // The criterion is strictly increasing in b.
    double result = hi;
    while (hi - lo > 1e-11 * std::max(1.0, lo)) {
      const double mid = 0.5 * (lo + hi);
      if (value(mid) < target) {
        lo = mid;
      } else {
        hi = mid;
      }
      result = 0.5 * (lo + hi);
    }
    return result;
  };
  return BoostResult{root_for(alpha / std::numbers::e), root_for(alpha),
                     BoostRegime::AD, BoostCriterion::relaxed};
}

BoostResult boost_lcs_pr(double alpha) {
  check_alpha(alpha, "boost_lcs_pr");
  const double lower = 1.0 / (alpha * (1.0 - std::log(alpha)));
  const double upper = alpha >= 1.0 / std::numbers::e
                           ? std::numbers::e
                           : -1.0 / (alpha * std::log(alpha));
  return BoostResult{std::max(1.0, lower), std::max(1.0, upper),
                     BoostRegime::PRDS, BoostCriterion::relaxed};
}

GenericBoost boost_generic_ad(const std::function<double(double)>& survival,
                              double alpha, int K, BoostCriterion criterion) {
  check_alpha(alpha, "boost_generic_ad");
  if (K < 1) {
    throw std::domain_error("boost_generic_ad: K must be at least 1");
  }
  if (!survival) {
    throw std::invalid_argument("boost_generic_ad: survival function required");
  }
  if (criterion == BoostCriterion::full_t) {
    return solve_boost(
        [&](double c) { return full_t_criterion(survival, alpha * c, K); },
        alpha);
  }
  return solve_boost(
      [&](double c) { return relaxed_criterion(survival, alpha * c); }, alpha);
}

GenericBoost boost_generic_pr(const std::function<double(double)>& survival,
                              double alpha, int K) {
  check_alpha(alpha, "boost_generic_pr");
  if (K < 1) {
    throw std::domain_error("boost_generic_pr: K must be at least 1");
  }
  if (!survival) {
    throw std::invalid_argument("boost_generic_pr: survival function required");
  }
  const auto criterion = [&](double c) {
    double worst = 0.0;
    for (int k = 1; k <= K; ++k) {
      const double x = static_cast<double>(K) / k;
      worst = std::max(worst, x * survival(x / (alpha * c)));
    }
    return worst;
  };
  return solve_boost(criterion, alpha);
}

double fdp(const DiscoverySet& discoveries, const std::vector<int>& nulls) {
  if (discoveries.rejected.empty()) return 0.0;
  std::vector<int> sorted_nulls(nulls);
  std::sort(sorted_nulls.begin(), sorted_nulls.end());
  int false_count = 0;
  for (int idx : discoveries.rejected) {
    if (std::binary_search(sorted_nulls.begin(), sorted_nulls.end(), idx)) {
      ++false_count;
    }
  }
  return static_cast<double>(false_count) /
         std::max<double>(1.0, static_cast<double>(discoveries.rejected.size()));
}

}  // namespace ev

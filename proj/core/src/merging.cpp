#include "ev/merging.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "ev/numerics.hpp"
#include "ev/thresholds.hpp"

namespace ev {

FactorSpec FactorSpec::make(EClass cls, bool msu, bool decreasing_mode_at_zero,
                            bool independent, bool sequential) {
  FactorSpec f;
  f.cls = cls;
  f.decreasing_mode_at_zero = decreasing_mode_at_zero;
  f.msu = msu || decreasing_mode_at_zero;  // mode at zero implies MSU
  f.independent = independent;
  f.sequential = sequential;
  return f;
}

EClass product_class(const std::vector<FactorSpec>& factors) {
  if (factors.empty()) {
    throw std::invalid_argument("product_class: factor list must be nonempty");
  }

  const FactorSpec& last = factors.back();
  bool earlier_sequential = true;
  for (std::size_t i = 0; i + 1 < factors.size(); ++i) {
    earlier_sequential = earlier_sequential && factors[i].sequential;
  }
  if (last.independent && last.decreasing_mode_at_zero && earlier_sequential) {
    return EClass::D;
  }

  bool all_independent_msu = true;
  for (const FactorSpec& f : factors) {
    all_independent_msu = all_independent_msu && f.independent && f.msu;
  }
  if (all_independent_msu) {
    return EClass::U;
  }

  return EClass::E0;
}

EClass lambda_transform_class(EClass cls, double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw std::domain_error("lambda_transform_class: lambda must lie in [0, 1]");
  }
  if (lambda == 0.0) return EClass::LCF;  // constant e-value 1
  if (lambda == 1.0) return cls;          // identity transform
  switch (cls) {
    case EClass::D:
    case EClass::U:
    case EClass::LCD:
    case EClass::LCF:
      return cls;
    default:
      return EClass::E0;
  }
}

WeightVector::WeightVector(std::vector<double> w) : weights(std::move(w)) {
  if (weights.empty()) {
    throw std::domain_error("WeightVector: must be nonempty");
  }
  double sum = 0.0;
  double min_w = std::numeric_limits<double>::infinity();
  for (double x : weights) {
    if (!(x >= 0.0)) {
      throw std::domain_error("WeightVector: weights must be nonnegative");
    }
    sum += x;
    min_w = std::min(min_w, x);
  }
  if (std::fabs(sum - 1.0) > 1e-9) {
    throw std::domain_error("WeightVector: weights must sum to 1");
  }
  min_weight_ = min_w;
}

double avg_tail_bound(int T, const WeightVector& weights, double gamma) {
  if (static_cast<std::size_t>(T) != weights.weights.size()) {
    throw std::domain_error("avg_tail_bound: T does not match the weight count");
  }
  if (!(gamma > 0.0 && gamma <= 1.0)) {
    throw std::domain_error("avg_tail_bound: gamma must lie in (0, 1]");
  }
  const double w1 = weights.min_weight();
  const double exp_bound =
      std::pow(gamma, -w1) * std::exp(-w1 * (1.0 / gamma - 1.0));
  const double unimodal = worst_case_error(EClass::U, gamma).value;
  return std::min(exp_bound, unimodal);
}

double avg_threshold(int T, double alpha) {
  if (T < 1) {
    throw std::domain_error("avg_threshold: T must be at least 1");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::domain_error("avg_threshold: alpha must lie in (0, 1)");
  }
  // Exponential branch with equal weights w1 = 1/T: solve
  // ln t - (t - 1) = T ln alpha, i.e. ln t - t = T ln alpha - 1, which is
  // strictly decreasing for t >= 1.
  const double rhs = static_cast<double>(T) * std::log(alpha) - 1.0;
  const double unimodal_t = threshold(EClass::U, alpha).value;
  double t_exp = std::numeric_limits<double>::infinity();
  const double hi = 2.0 * (1.0 - rhs);  // ln t - t < rhs out here
  if (std::log(hi) - hi < rhs) {
    const auto res = find_root(
        [rhs](double t) { return std::log(t) - t - rhs; },
        Bracket{1.0, hi, 1e-12});
    t_exp = res.x;
  }
  return std::max(1.0, std::min(t_exp, unimodal_t));
}

}  // namespace ev

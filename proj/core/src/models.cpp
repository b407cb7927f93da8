#include "ev/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "ev/numerics.hpp"

namespace ev {

namespace {

constexpr double kLogTwoPi = 1.8378770664093454836;

double log_normal_pdf(double x, double mu, double sigma) {
  const double z = (x - mu) / sigma;
  return -0.5 * z * z - std::log(sigma) - 0.5 * kLogTwoPi;
}

// Trigamma via recurrence shift and the asymptotic series; used only by the
// Newton polish of the profile-likelihood stationarity equation.
double trigamma(double x) {
  double result = 0.0;
  while (x < 10.0) {
    result += 1.0 / (x * x);
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  result += inv * (1.0 + inv * (0.5 + inv * (1.0 / 6.0 -
            inv2 * (1.0 / 30.0 - inv2 * (1.0 / 42.0 - inv2 / 30.0)))));
  return result;
}

}  // namespace

void EProcessState::add_positive(double x) {
  if (!(x > 0.0)) {
    throw std::domain_error("EProcessState::add_positive: x must be positive");
  }
  ++n;
  S += x;
  sum_log += std::log(x);
}

double gaussian_lr_evalue(double mu, const EProcessState& state) {
  return std::exp(mu * state.S - 0.5 * static_cast<double>(state.n) * mu * mu);
}

double gaussian_mixture_evalue(const EProcessState& state) {
  if (state.n == 0) return 1.0;
  const double n = static_cast<double>(state.n);
  return std::exp(state.S * state.S / (2.0 * n + 2.0)) / std::sqrt(n + 1.0);
}

double gaussian_sup_stat(const EProcessState& state) {
  if (state.n < 1) {
    throw std::domain_error("gaussian_sup_stat: requires at least one observation");
  }
  const double s_plus = std::max(state.S, 0.0);
  return std::exp(s_plus * s_plus / (2.0 * static_cast<double>(state.n)));
}

double gaussian_sup_type1(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::domain_error("gaussian_sup_type1: alpha must lie in (0, 1)");
  }
  return normal_cdf(-std::sqrt(-2.0 * std::log(alpha)));
}

namespace {

// Interior probe points along one region axis. Finite intervals are sampled
// at fixed interior fractions; infinite ends fan out geometrically.
std::vector<double> axis_points(double lo, double hi) {
  static constexpr double fracs[] = {0.02, 0.1, 0.3, 0.5, 0.7, 0.9, 0.98};
  static constexpr double fan[] = {0.02, 0.2, 1.0, 5.0, 25.0, 125.0, 625.0};
  std::vector<double> pts;
  const bool lo_fin = std::isfinite(lo);
  const bool hi_fin = std::isfinite(hi);
  if (lo_fin && hi_fin) {
    for (double f : fracs) pts.push_back(lo + (hi - lo) * f);
  } else if (lo_fin) {
    const double s = std::max(1.0, std::fabs(lo));
    for (double g : fan) pts.push_back(lo + s * g);
  } else if (hi_fin) {
    const double s = std::max(1.0, std::fabs(hi));
    for (double g : fan) pts.push_back(hi - s * g);
  } else {
    for (double g : fan) {
      pts.push_back(-g);
      pts.push_back(g);
    }
  }
  return pts;
}

}  // namespace

bool expfam_comonotone(const ExpFamSpec& spec,
                       const std::vector<double>& theta0,
                       const ParamRegion& region) {
  if (!spec.eta) {
    throw std::invalid_argument("expfam_comonotone: spec lacks a natural-parameter map");
  }
  if (region.bounds.empty()) {
    throw std::invalid_argument("expfam_comonotone: region has no bounds");
  }
  if (region.bounds.size() != theta0.size()) {
    throw std::invalid_argument(
        "expfam_comonotone: region dimension " +
        std::to_string(region.bounds.size()) + " does not match theta0 dimension " +
        std::to_string(theta0.size()));
  }
  for (const auto& [lo, hi] : region.bounds) {
    if (!(lo < hi)) {
      throw std::invalid_argument("expfam_comonotone: empty interval in region");
    }
  }
  for (int dir : spec.t_monotone) {
    if (dir != 1 && dir != -1) {
      throw std::invalid_argument(
          "expfam_comonotone: monotone directions must be +1 or -1");
    }
  }

  const std::vector<double> eta0 = spec.eta(theta0);
  if (eta0.size() != spec.t_monotone.size()) {
    throw std::invalid_argument(
        "expfam_comonotone: eta dimension does not match monotone flags");
  }

  std::vector<std::vector<double>> grids;
  grids.reserve(region.bounds.size());
  for (const auto& [lo, hi] : region.bounds) {
    grids.push_back(axis_points(lo, hi));
  }

  // Tensor-product walk over the probe grid; every nonzero component sign of
  // eta(theta) - eta(theta0), times the statistic's monotone direction, must
  // agree on a single common direction.
  std::vector<std::size_t> idx(grids.size(), 0);
  int common = 0;
  for (;;) {
    std::vector<double> theta(grids.size());
    for (std::size_t d = 0; d < grids.size(); ++d) theta[d] = grids[d][idx[d]];
    const std::vector<double> eta = spec.eta(theta);
    if (eta.size() != eta0.size()) {
      throw std::invalid_argument("expfam_comonotone: eta dimension varies");
    }
    for (std::size_t j = 0; j < eta.size(); ++j) {
      const double diff = eta[j] - eta0[j];
      if (diff == 0.0) continue;
      const int dir = (diff > 0.0 ? 1 : -1) * spec.t_monotone[j];
      if (common == 0) {
        common = dir;
      } else if (dir != common) {
        return false;
      }
    }
    std::size_t d = 0;
    while (d < grids.size() && ++idx[d] == grids[d].size()) {
      idx[d] = 0;
      ++d;
    }
    if (d == grids.size()) break;
  }
  return true;
}

std::string_view to_string(GammaRegionKind kind) {
  switch (kind) {
    case GammaRegionKind::full_quadrant: return "full-quadrant";
    case GammaRegionKind::shape_up_rate_down: return "shape-up-rate-down";
    case GammaRegionKind::shape_down_rate_up: return "shape-down-rate-up";
  }
  throw std::logic_error("to_string: unhandled gamma region");
}

GammaRegionKind gamma_region_from_string(std::string_view name) {
  if (name == "full-quadrant") return GammaRegionKind::full_quadrant;
  if (name == "shape-up-rate-down") return GammaRegionKind::shape_up_rate_down;
  if (name == "shape-down-rate-up") return GammaRegionKind::shape_down_rate_up;
  throw std::invalid_argument("unknown gamma region: " + std::string(name));
}

namespace {

struct ShapeInterval {
  double lo;
  double hi;
};

// Search box for the profile shape parameter (three decades around the
// null on the admissible side).
ShapeInterval shape_interval(const GammaRegion& region) {
  const double a0 = region.null_shape;
  switch (region.kind) {
    case GammaRegionKind::full_quadrant: return {a0 * 1e-3, a0 * 1e3};
    case GammaRegionKind::shape_up_rate_down: return {a0, a0 * 1e3};
    case GammaRegionKind::shape_down_rate_up: return {a0 * 1e-3, a0};
  }
  throw std::logic_error("shape_interval: unhandled gamma region");
}

double clip_rate(double rate, const GammaRegion& region) {
  switch (region.kind) {
    case GammaRegionKind::full_quadrant:
      return rate;
    case GammaRegionKind::shape_up_rate_down:
      return std::min(rate, region.null_rate);
    case GammaRegionKind::shape_down_rate_up:
      return std::max(rate, region.null_rate);
  }
  throw std::logic_error("clip_rate: unhandled gamma region");
}

double gamma_loglik(double a, double b, const EProcessState& s) {
  const double n = static_cast<double>(s.n);
  return n * (a * std::log(b) - std::lgamma(a)) + (a - 1.0) * s.sum_log -
         b * s.S;
}

}  // namespace

GammaMle gamma_constrained_mle(const EProcessState& stats, const GammaRegion& region) {
  if (stats.n < 2) {
    throw std::invalid_argument("gamma_constrained_mle: needs at least two observations");
  }
  const double n = static_cast<double>(stats.n);
  const double mean = stats.S / n;
  const double mean_log = stats.sum_log / n;

  // Zero Jensen gap between ln(mean) and mean(ln) identifies constant data.
  const double jensen_gap = std::log(mean) - mean_log;
  const bool degenerate = jensen_gap <= 1e-12;

  const auto profile_rate = [&](double a) { return clip_rate(a / mean, region); };
  const auto profile = [&](double a) {
    return gamma_loglik(a, profile_rate(a), stats);
  };

  const ShapeInterval box = shape_interval(region);

  // Golden-section maximization of the profile log-likelihood.
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = box.lo;
  double hi = box.hi;
  double x1 = hi - invphi * (hi - lo);
  double x2 = lo + invphi * (hi - lo);
  double f1 = profile(x1);
  double f2 = profile(x2);
  while (hi - lo > 1e-11 * std::max(1.0, lo)) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + invphi * (hi - lo);
      f2 = profile(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - invphi * (hi - lo);
      f1 = profile(x1);
    }
  }
  double a_hat = 0.5 * (lo + hi);

  // Newton polish on the stationarity equation of the active branch:
  // free rate:    ln a - psi(a) = ln(mean) - mean(ln)
  // clipped rate: psi(a) = ln(rate) + mean(ln)
  if (a_hat > box.lo + 1e-9 && a_hat < box.hi - 1e-9) {
    double a = a_hat;
    for (int it = 0; it < 8; ++it) {
      const double rate = a / mean;
      const bool clipped = profile_rate(a) != rate;
      double g, dg;
      if (!clipped) {
        g = std::log(a) - digamma(a) - jensen_gap;
        dg = 1.0 / a - trigamma(a);
      } else {
        g = std::log(profile_rate(a)) + mean_log - digamma(a);
        dg = -trigamma(a);
      }
      const double step = g / dg;
      const double next = a - step;
      if (!(next > box.lo && next < box.hi)) break;
      a = next;
      if (std::fabs(step) < 1e-12 * std::max(1.0, a)) break;
    }
    if (a > box.lo && a < box.hi && profile(a) >= profile(a_hat)) {
      a_hat = a;
    }
  }

  GammaMle out;
  out.shape = a_hat;
  out.rate = profile_rate(a_hat);
  out.degenerate = degenerate;

  const double a0 = region.null_shape;
  const double b0 = region.null_rate;
  const double tol_a = 1e-7 * std::max(1.0, a0);
  const bool shape_at_null =
      region.kind != GammaRegionKind::full_quadrant && std::fabs(a_hat - a0) <= tol_a;
  const bool rate_clipped =
      region.kind != GammaRegionKind::full_quadrant && out.rate == b0 &&
      a_hat / mean != b0;
  out.on_boundary = shape_at_null || rate_clipped || degenerate;
  if (shape_at_null) out.shape = a0;
  return out;
}

GammaMle gamma_constrained_mle(const std::vector<double>& data, const GammaRegion& region) {
  if (data.size() < 2) {
    throw std::invalid_argument("gamma_constrained_mle: needs at least two observations");
  }
  EProcessState stats;
  for (double x : data) {
    if (!(x > 0.0)) {
      throw std::domain_error("gamma_constrained_mle: data must be positive");
    }
    stats.add_positive(x);
  }
  return gamma_constrained_mle(stats, region);
}

double gamma_log_lr(double shape, double rate, const GammaRegion& region,
                    const EProcessState& stats) {
  if (!(shape > 0.0) || !(rate > 0.0)) {
    throw std::domain_error("gamma_log_lr: shape and rate must be positive");
  }
  const double n = static_cast<double>(stats.n);
  const double a0 = region.null_shape;
  const double b0 = region.null_rate;
  return n * (std::lgamma(a0) - std::lgamma(shape)) +
         n * (shape * std::log(rate) - a0 * std::log(b0)) +
         (shape - a0) * stats.sum_log - (rate - b0) * stats.S;
}

double gamma_lr_evalue(double shape, double rate, const GammaRegion& region,
                       const EProcessState& stats) {
  return std::exp(gamma_log_lr(shape, rate, region, stats));
}

double gamma_log_sup_stat(const EProcessState& stats, const GammaRegion& region) {
  const GammaMle mle = gamma_constrained_mle(stats, region);
  return gamma_log_lr(mle.shape, mle.rate, region, stats);
}

double gamma_sup_stat(const std::vector<double>& data, const GammaRegion& region) {
  EProcessState stats;
  for (double x : data) {
    if (!(x > 0.0)) {
      throw std::domain_error("gamma_sup_stat: data must be positive");
    }
    stats.add_positive(x);
  }
  return std::exp(gamma_log_sup_stat(stats, region));
}

std::string_view to_string(MixtureModel model) {
  switch (model) {
    case MixtureModel::two_means_unit_var: return "two-means-unit-var";
    case MixtureModel::symmetric_two_means: return "symmetric-two-means";
    case MixtureModel::full_five_param: return "full-five-param";
  }
  throw std::logic_error("to_string: unhandled mixture model");
}

MixtureModel mixture_model_from_string(std::string_view name) {
  if (name == "two-means-unit-var") return MixtureModel::two_means_unit_var;
  if (name == "symmetric-two-means") return MixtureModel::symmetric_two_means;
  if (name == "full-five-param") return MixtureModel::full_five_param;
  throw std::invalid_argument("unknown mixture model: " + std::string(name));
}

double mixture_log_density(const MixtureFit& fit, double x) {
  const double l1 = std::log(fit.weight) + log_normal_pdf(x, fit.mu1, fit.sigma1);
  const double l2 =
      std::log1p(-fit.weight) + log_normal_pdf(x, fit.mu2, fit.sigma2);
  const double m = std::max(l1, l2);
  return m + std::log(std::exp(l1 - m) + std::exp(l2 - m));
}

double mixture_loglik(const MixtureFit& fit, std::span<const double> data) {
  double total = 0.0;
  for (double x : data) total += mixture_log_density(fit, x);
  return total;
}

namespace {

constexpr double kSigmaFloor = 1e-6;
constexpr int kMaxEmIterations = 500;
constexpr int kMaxEmRestarts = 5;

struct EmInit {
  double w, mu1, mu2, sigma1, sigma2;
};

// Deterministic initialization: split the sorted sample at its median and
// seed the components with the half means (attempt > 0 perturbs it after a
// variance collapse).
EmInit em_initial(std::span<const double> data, int attempt) {
  std::vector<double> sorted(data.begin(), data.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t half = sorted.size() / 2;
  double m1 = 0.0, m2 = 0.0;
  for (std::size_t i = 0; i < half; ++i) m1 += sorted[i];
  for (std::size_t i = half; i < sorted.size(); ++i) m2 += sorted[i];
  m1 /= static_cast<double>(half);
  m2 /= static_cast<double>(sorted.size() - half);

  double mean = 0.0;
  for (double x : sorted) mean += x;
  mean /= static_cast<double>(sorted.size());
  double var = 0.0;
  for (double x : sorted) var += (x - mean) * (x - mean);
  var /= static_cast<double>(sorted.size());
  const double sd = std::max(std::sqrt(var), 1e-3);

  EmInit init;
  init.w = 0.5;
  init.mu1 = m1 - 0.25 * sd * attempt;
  init.mu2 = m2 + 0.4 * sd * attempt;
  init.sigma1 = sd * (1.0 + 0.5 * attempt);
  init.sigma2 = sd * (1.0 + 0.8 * attempt);
  return init;
}

MixtureFit em_run(std::span<const double> data, MixtureModel model,
                  const EmInit& init, bool& collapsed) {
  const std::size_t n = data.size();
  const double dn = static_cast<double>(n);
  collapsed = false;

  MixtureFit fit;
  fit.weight = init.w;
  if (model == MixtureModel::symmetric_two_means) {
    const double mu = 0.5 * (init.mu2 - init.mu1);
    fit.mu1 = -mu;
    fit.mu2 = mu;
    fit.sigma1 = fit.sigma2 = 1.0;
    fit.weight = 0.5;
  } else {
    fit.mu1 = init.mu1;
    fit.mu2 = init.mu2;
    if (model == MixtureModel::two_means_unit_var) {
      fit.sigma1 = fit.sigma2 = 1.0;
      fit.weight = 0.5;
    } else {
      fit.sigma1 = init.sigma1;
      fit.sigma2 = init.sigma2;
    }
  }

  std::vector<double> resp(n);
  double prev_ll = -std::numeric_limits<double>::infinity();
  for (int iter = 1; iter <= kMaxEmIterations; ++iter) {
    // E-step: responsibilities of the first component, and the loglik.
    double ll = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double l1 =
          std::log(fit.weight) + log_normal_pdf(data[i], fit.mu1, fit.sigma1);
      const double l2 = std::log1p(-fit.weight) +
                        log_normal_pdf(data[i], fit.mu2, fit.sigma2);
      const double m = std::max(l1, l2);
      const double denom = std::exp(l1 - m) + std::exp(l2 - m);
      ll += m + std::log(denom);
      resp[i] = std::exp(l1 - m) / denom;
    }
    fit.loglik = ll;
    fit.iterations = iter;
    fit.loglik_trace.push_back(ll);
    if (ll - prev_ll <= 1e-8 * (std::fabs(ll) + 1.0) && iter > 1) {
      fit.converged = true;
      break;
    }
    prev_ll = ll;

    // M-step.
    switch (model) {
      case MixtureModel::two_means_unit_var: {
        double r = 0.0, rx = 0.0, sx = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          r += resp[i];
          rx += resp[i] * data[i];
          sx += data[i];
        }
        if (r > 1e-12 && dn - r > 1e-12) {
          fit.mu1 = rx / r;
          fit.mu2 = (sx - rx) / (dn - r);
        }
        break;
      }
      case MixtureModel::symmetric_two_means: {
        // Components are (-mu, +mu); the stationary update is the
        // responsibility-signed mean.
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          acc += (1.0 - 2.0 * resp[i]) * data[i];
        }
        const double mu = acc / dn;
        fit.mu1 = -mu;
        fit.mu2 = mu;
        break;
      }
      case MixtureModel::full_five_param: {
        double r = 0.0, rx = 0.0, sx = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          r += resp[i];
          rx += resp[i] * data[i];
          sx += data[i];
        }
        const double r2 = dn - r;
        if (r < 1e-12 || r2 < 1e-12) {
          collapsed = true;
          return fit;
        }
        fit.mu1 = rx / r;
        fit.mu2 = (sx - rx) / r2;
        double v1 = 0.0, v2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          const double d1 = data[i] - fit.mu1;
          const double d2 = data[i] - fit.mu2;
          v1 += resp[i] * d1 * d1;
          v2 += (1.0 - resp[i]) * d2 * d2;
        }
        fit.sigma1 = std::sqrt(v1 / r);
        fit.sigma2 = std::sqrt(v2 / r2);
        fit.weight = std::clamp(r / dn, 1e-6, 1.0 - 1e-6);
        if (fit.sigma1 < kSigmaFloor || fit.sigma2 < kSigmaFloor) {
          collapsed = true;
          return fit;
        }
        break;
      }
    }
  }
  return fit;
}

}  // namespace

MixtureFit em_fit_gaussian_mixture(std::span<const double> data, MixtureModel model) {
  if (data.size() < 4) {
    throw std::invalid_argument("em_fit_gaussian_mixture: needs at least four observations");
  }
  MixtureFit fit;
  for (int attempt = 0; attempt <= kMaxEmRestarts; ++attempt) {
    bool collapsed = false;
    fit = em_run(data, model, em_initial(data, attempt), collapsed);
    if (!collapsed) return fit;
  }
  fit.flagged = true;
  return fit;
}

double ui_lr_evalue(const MixtureFit& fit, std::span<const double> eval) {
  double log_lr = 0.0;
  for (double x : eval) {
    log_lr += mixture_log_density(fit, x) - log_normal_pdf(x, 0.0, 1.0);
  }
  return std::exp(log_lr);
}

double ui_split_lrt(std::span<const double> data, double split_fraction,
                    MixtureModel model) {
  const std::size_t n = data.size();
  const std::size_t m = static_cast<std::size_t>(
      std::floor(split_fraction * static_cast<double>(n)));
  if (m < 1 || m >= n) {
    throw std::invalid_argument("ui_split_lrt: both split halves must be nonempty");
  }
  const MixtureFit fit = em_fit_gaussian_mixture(data.subspan(0, m), model);
  return ui_lr_evalue(fit, data.subspan(m));
}

}  // namespace ev

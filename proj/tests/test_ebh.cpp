// Tests for the e-BH procedure, the discretization transform, and the
// boosting-factor solvers.

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "ev/ebh.hpp"
#include "ev/rng.hpp"

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double exp1_survival(double x) { return x <= 0.0 ? 1.0 : std::exp(-x); }
double point_mass_one(double x) { return x <= 1.0 ? 1.0 : 0.0; }
double point_mass_zero(double x) { return x <= 0.0 ? 1.0 : 0.0; }

// The relaxed boosting criterion for an exponential null has the closed form
// exp(-1/(alpha b)) (1 + alpha b); the solved factor must sit on the target.
double exp1_relaxed_criterion(double alpha, double b) {
  return std::exp(-1.0 / (alpha * b)) * (1.0 + alpha * b);
}

// Reference evaluation of E[T(alpha c E)]: T equals K/k exactly when the
// argument lies in [K/k, K/(k-1)), so the expectation is a K-term sum of
// survival-function differences with the k = 1 cell extending to infinity.
double full_t_reference(const std::function<double(double)>& survival,
                        double alpha, int K, double c) {
  double total = 0.0;
  double prev = 0.0;  // survival at the upper edge of the current cell
  for (int k = 1; k <= K; ++k) {
    const double lo = static_cast<double>(K) / (k * alpha * c);
    const double s_lo = survival(lo);
    total += static_cast<double>(K) / k * (s_lo - prev);
    prev = s_lo;
  }
  return total;
}

// Reference evaluation of the positive-dependence criterion: the maximum of
// x * S(x / (alpha c)) over the grid x in {K/k}.
double pr_reference(const std::function<double(double)>& survival, double alpha,
                    int K, double c) {
  double worst = 0.0;
  for (int k = 1; k <= K; ++k) {
    const double x = static_cast<double>(K) / k;
    worst = std::max(worst, x * survival(x / (alpha * c)));
  }
  return worst;
}

}  // namespace

TEST_CASE("discretization transform") {
  CHECK(ev::t_transform(0.5, 1000) == 0.0);
  CHECK(ev::t_transform(kInf, 1000) == 1000.0);
  CHECK(ev::t_transform(3.0, 10) == doctest::Approx(2.5));
  CHECK(ev::t_transform(1.0, 7) == doctest::Approx(1.0));
  CHECK(ev::t_transform(7.0, 7) == doctest::Approx(7.0));
  // Just below a grid point the value drops to the previous rung.
  CHECK(ev::t_transform(2.4999, 10) == doctest::Approx(2.0));

  SUBCASE("never exceeds its argument and lands on the grid") {
    for (int K : {1, 2, 7, 10, 1000}) {
      double prev = 0.0;
      for (double lx = 0.0; lx <= 12.0; lx += 0.03125) {
        const double x = std::exp(lx);
        const double t = ev::t_transform(x, K);
        CAPTURE(K);
        CAPTURE(x);
        CHECK(t <= x);
        CHECK(t >= prev);  // nondecreasing
        // The value is K divided by an integer between 1 and K.
        const double k = static_cast<double>(K) / t;
        CHECK(std::fabs(k - std::round(k)) < 1e-9);
        CHECK(std::round(k) >= 1.0);
        CHECK(std::round(k) <= static_cast<double>(K));
        prev = t;
      }
    }
  }

  SUBCASE("domain errors") {
    CHECK_THROWS_AS(ev::t_transform(2.0, 0), std::domain_error);
    CHECK_THROWS_AS(ev::t_transform(-1.0, 10), std::domain_error);
    CHECK_THROWS_AS(
        ev::t_transform(std::numeric_limits<double>::quiet_NaN(), 10),
        std::domain_error);
  }
}

TEST_CASE("step-up rule on examples") {
  SUBCASE("all zeros reject nothing") {
    const ev::DiscoverySet d = ev::ebh_reject({0.0, 0.0, 0.0}, 0.1);
    CHECK(d.k_star == 0);
    CHECK(d.rejected.empty());
    CHECK(d.K == 3);
    CHECK(d.alpha == 0.1);
  }
  SUBCASE("two large values at alpha = 0.5") {
    // K/(alpha k) = 8/k: e_(1) = 8 >= 8, e_(2) = 8 >= 4, e_(3) = 0 < 8/3.
    const ev::DiscoverySet d = ev::ebh_reject({8.0, 8.0, 0.0, 0.0}, 0.5);
    CHECK(d.k_star == 2);
    REQUIRE(d.rejected.size() == 2);
    CHECK(d.rejected[0] == 0);
    CHECK(d.rejected[1] == 1);
  }
  SUBCASE("all e-values at K/alpha reject everything") {
    const std::vector<double> e(6, 6.0 / 0.25);
    const ev::DiscoverySet d = ev::ebh_reject(e, 0.25);
    CHECK(d.k_star == 6);
    CHECK(d.rejected.size() == 6);
  }
  SUBCASE("boundary ties all enter the rejection set") {
    // K/(alpha k) = 4/k: three copies of 4 satisfy k = 3 (4 >= 4/3).
    const ev::DiscoverySet d = ev::ebh_reject({4.0, 4.0, 4.0, 0.0}, 1.0 - 1e-12);
    CHECK(d.k_star == 3);
    REQUIRE(d.rejected.size() == 3);
    CHECK(d.rejected == std::vector<int>{0, 1, 2});
  }
  SUBCASE("validation") {
    CHECK_THROWS_AS(ev::ebh_reject({}, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(ev::ebh_reject({1.0}, 0.0), std::domain_error);
    CHECK_THROWS_AS(ev::ebh_reject({1.0}, 1.0), std::domain_error);
    CHECK_THROWS_AS(ev::ebh_reject({1.0, -0.5}, 0.1), std::domain_error);
  }
}

TEST_CASE("step-up rule self-consistency on random inputs") {
  ev::RngStream rng(20240819, 1);
  for (int rep = 0; rep < 1000; ++rep) {
    const int K = 1 + static_cast<int>(rng.uniform() * 50.0);
    const double alpha = 0.02 + 0.8 * rng.uniform();
    std::vector<double> e(static_cast<std::size_t>(K));
    for (double& x : e) {
      // Mix of dead, moderate, and boundary-scale e-values.
      const double u = rng.uniform();
      if (u < 0.3) {
        x = 0.0;
      } else if (u < 0.7) {
        x = rng.exponential(1.0);
      } else {
        x = (K / alpha) * rng.uniform() * 1.5;
      }
    }
    const ev::DiscoverySet d = ev::ebh_reject(e, alpha);
    REQUIRE(d.k_star >= 0);
    REQUIRE(d.k_star <= K);
    REQUIRE(static_cast<int>(d.rejected.size()) == d.k_star);

    std::vector<double> sorted = e;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    if (d.k_star > 0) {
      // The k*-th largest clears its own threshold.
      CHECK(sorted[static_cast<std::size_t>(d.k_star) - 1] >=
            K / (alpha * d.k_star));
    }
    // Maximality: no larger k clears its threshold.
    for (int k = d.k_star + 1; k <= K; ++k) {
      CHECK(sorted[static_cast<std::size_t>(k) - 1] < K / (alpha * k));
    }
    // The rejected indices carry the largest e-values.
    CHECK(std::is_sorted(d.rejected.begin(), d.rejected.end()));
    double min_rejected = kInf;
    std::vector<bool> in(static_cast<std::size_t>(K), false);
    for (int idx : d.rejected) {
      REQUIRE(idx >= 0);
      REQUIRE(idx < K);
      in[static_cast<std::size_t>(idx)] = true;
      min_rejected = std::min(min_rejected, e[static_cast<std::size_t>(idx)]);
    }
    for (int i = 0; i < K; ++i) {
      if (!in[static_cast<std::size_t>(i)] && d.k_star > 0) {
        CHECK(e[static_cast<std::size_t>(i)] <= min_rejected);
      }
    }
  }
}

TEST_CASE("log-concave survival boosting under arbitrary dependence") {
  const double alphas[] = {0.01, 0.02, 0.05, 0.10};
  const double lower_expected[] = {17.35, 9.82, 4.75, 2.82};
  const double upper_expected[] = {20.86, 12.11, 6.13, 3.81};
  for (int i = 0; i < 4; ++i) {
    const ev::BoostResult r = ev::boost_lcs_ad(alphas[i]);
    CAPTURE(alphas[i]);
    CHECK(std::fabs(r.lower - lower_expected[i]) <= 0.01);
    CHECK(std::fabs(r.upper - upper_expected[i]) <= 0.01);
    CHECK(r.regime == ev::BoostRegime::AD);
    CHECK(r.criterion == ev::BoostCriterion::relaxed);
    // Root residuals: lower solves the target alpha/e, upper the target alpha.
    CHECK(std::fabs(exp1_relaxed_criterion(alphas[i], r.lower) -
                    alphas[i] / std::exp(1.0)) < 1e-10);
    CHECK(std::fabs(exp1_relaxed_criterion(alphas[i], r.upper) - alphas[i]) <
          1e-10);
  }

  SUBCASE("bracket ordering and asymptotic tightness") {
    double prev_lower = kInf;
    double prev_upper = kInf;
    for (double a : {1e-6, 1e-4, 1e-3, 0.01, 0.05, 0.1, 0.2, 0.5, 0.9}) {
      const ev::BoostResult r = ev::boost_lcs_ad(a);
      CAPTURE(a);
      CHECK(r.lower >= 1.0);
      CHECK(r.lower <= r.upper);
      CHECK(r.lower <= prev_lower + 1e-12);
      CHECK(r.upper <= prev_upper + 1e-12);
      prev_lower = r.lower;
      prev_upper = r.upper;
    }
    const ev::BoostResult tight = ev::boost_lcs_ad(1e-6);
    CHECK(tight.upper / tight.lower < 1.1);
  }

  SUBCASE("domain errors") {
    CHECK_THROWS_AS(ev::boost_lcs_ad(0.0), std::domain_error);
    CHECK_THROWS_AS(ev::boost_lcs_ad(1.0), std::domain_error);
    CHECK_THROWS_AS(ev::boost_lcs_ad(-0.3), std::domain_error);
  }
}

TEST_CASE("log-concave survival boosting under positive dependence") {
  const double alphas[] = {0.01, 0.02, 0.05, 0.10};
  const double lower_expected[] = {17.84, 10.18, 5.01, 3.03};
  const double upper_expected[] = {21.71, 12.78, 6.68, 4.34};
  for (int i = 0; i < 4; ++i) {
    const ev::BoostResult r = ev::boost_lcs_pr(alphas[i]);
    CAPTURE(alphas[i]);
    CHECK(std::fabs(r.lower - lower_expected[i]) <= 0.01);
    CHECK(std::fabs(r.upper - upper_expected[i]) <= 0.01);
    CHECK(r.regime == ev::BoostRegime::PRDS);
    // Closed forms hold to rounding.
    const double a = alphas[i];
    CHECK(r.lower == doctest::Approx(1.0 / (a * (1.0 - std::log(a)))).epsilon(1e-13));
    CHECK(r.upper == doctest::Approx(-1.0 / (a * std::log(a))).epsilon(1e-13));
  }

  SUBCASE("upper-branch continuity at alpha = 1/e") {
    const double inv_e = std::exp(-1.0);
    CHECK(ev::boost_lcs_pr(inv_e).upper == std::exp(1.0));
    CHECK(ev::boost_lcs_pr(0.5).upper == std::exp(1.0));
    // Just below the branch point the small-alpha formula agrees with e.
    CHECK(ev::boost_lcs_pr(inv_e - 1e-12).upper ==
          doctest::Approx(std::exp(1.0)).epsilon(1e-9));
  }

  SUBCASE("ordering and monotonicity") {
    double prev_lower = kInf;
    double prev_upper = kInf;
    for (double a : {1e-6, 1e-3, 0.01, 0.05, 0.1, 0.3, 0.5, 0.9}) {
      const ev::BoostResult r = ev::boost_lcs_pr(a);
      CAPTURE(a);
      CHECK(r.lower >= 1.0);
      CHECK(r.lower <= r.upper);
      CHECK(r.lower <= prev_lower + 1e-12);
      CHECK(r.upper <= prev_upper + 1e-12);
      prev_lower = r.lower;
      prev_upper = r.upper;
    }
  }

  SUBCASE("domain errors") {
    CHECK_THROWS_AS(ev::boost_lcs_pr(0.0), std::domain_error);
    CHECK_THROWS_AS(ev::boost_lcs_pr(1.0), std::domain_error);
  }
}

TEST_CASE("generic boosting under arbitrary dependence") {
  SUBCASE("relaxed criterion on an exponential null matches the closed form") {
    for (double a : {0.01, 0.02, 0.05, 0.1}) {
      const ev::GenericBoost g =
          ev::boost_generic_ad(exp1_survival, a, 100, ev::BoostCriterion::relaxed);
      CAPTURE(a);
      CHECK_FALSE(g.saturated);
      CHECK(g.value == doctest::Approx(ev::boost_lcs_ad(a).upper).epsilon(1e-6));
      // Independent residual: the solved factor sits on the criterion boundary.
      CHECK(exp1_relaxed_criterion(a, g.value) == doctest::Approx(a).epsilon(1e-7));
    }
  }

  SUBCASE("full-transform criterion is weaker than the relaxation") {
    for (double a : {0.05, 0.1}) {
      const double relaxed =
          ev::boost_generic_ad(exp1_survival, a, 1000, ev::BoostCriterion::relaxed)
              .value;
      const ev::GenericBoost full =
          ev::boost_generic_ad(exp1_survival, a, 1000, ev::BoostCriterion::full_t);
      CAPTURE(a);
      CHECK(full.value >= relaxed - 1e-9);
      // The returned factor is feasible for the reference sum and nearly
      // maximal: a small push past it violates the criterion.
      CHECK(full_t_reference(exp1_survival, a, 1000, full.value) <= a + 1e-9);
      if (!full.saturated) {
        CHECK(full_t_reference(exp1_survival, a, 1000, full.value + 1e-3) > a);
      }
    }
  }

  SUBCASE("point mass at one drives the factor to the boundary 1/alpha") {
    const double a = 0.05;
    for (ev::BoostCriterion crit :
         {ev::BoostCriterion::full_t, ev::BoostCriterion::relaxed}) {
      const ev::GenericBoost g = ev::boost_generic_ad(point_mass_one, a, 50, crit);
      CHECK(g.value >= 1.0 / (2.0 * a));
      CHECK(g.value <= 1.0 / a + 1e-6);
      CHECK_FALSE(g.saturated);
    }
  }

  SUBCASE("criterion unsatisfiable at c = 1 returns the safe factor 1") {
    // A point mass at 50 (mean far above one) violates even the unboosted
    // criterion, so the solver falls back to 1.
    const auto heavy = [](double x) { return x <= 50.0 ? 1.0 : 0.0; };
    const ev::GenericBoost g =
        ev::boost_generic_ad(heavy, 0.05, 10, ev::BoostCriterion::relaxed);
    CHECK(g.value == 1.0);
    CHECK_FALSE(g.saturated);
  }

  SUBCASE("bounded support below the threshold saturates at the cap") {
    const ev::GenericBoost g =
        ev::boost_generic_ad(point_mass_zero, 0.05, 10, ev::BoostCriterion::relaxed);
    CHECK(g.saturated);
    CHECK(g.value == 1e6);
  }

  SUBCASE("validation") {
    CHECK_THROWS_AS(
        ev::boost_generic_ad(exp1_survival, 0.0, 10, ev::BoostCriterion::relaxed),
        std::domain_error);
    CHECK_THROWS_AS(
        ev::boost_generic_ad(exp1_survival, 0.05, 0, ev::BoostCriterion::relaxed),
        std::domain_error);
    CHECK_THROWS_AS(
        ev::boost_generic_ad(nullptr, 0.05, 10, ev::BoostCriterion::relaxed),
        std::invalid_argument);
  }
}

TEST_CASE("generic boosting under positive dependence") {
  SUBCASE("exponential null approaches the closed-form upper bound") {
    for (double a : {0.01, 0.05}) {
      const double continuous = -1.0 / (a * std::log(a));
      const ev::GenericBoost big = ev::boost_generic_pr(exp1_survival, a, 100000);
      const ev::GenericBoost small = ev::boost_generic_pr(exp1_survival, a, 10);
      CAPTURE(a);
      CHECK(big.value == doctest::Approx(continuous).epsilon(1e-4));
      // A coarser grid imposes fewer constraints, so the factor can only grow.
      CHECK(small.value >= continuous - 1e-7);
      CHECK(small.value >= big.value - 1e-7);
    }
  }

  SUBCASE("returned factor is feasible and nearly maximal for the grid") {
    for (int K : {7, 100}) {
      for (double a : {0.02, 0.1}) {
        const ev::GenericBoost g = ev::boost_generic_pr(exp1_survival, a, K);
        CAPTURE(K);
        CAPTURE(a);
        CHECK(pr_reference(exp1_survival, a, K, g.value) <= a + 1e-9);
        if (!g.saturated) {
          CHECK(pr_reference(exp1_survival, a, K, g.value + 1e-3) > a);
        }
      }
    }
  }

  SUBCASE("factor one is always admissible for genuine e-value nulls") {
    const auto uniform02 = [](double x) {
      return x <= 0.0 ? 1.0 : (x >= 2.0 ? 0.0 : 1.0 - x / 2.0);
    };
    for (double a : {0.05, 0.2}) {
      CHECK(ev::boost_generic_pr(exp1_survival, a, 20).value >= 1.0);
      CHECK(ev::boost_generic_pr(uniform02, a, 20).value >= 1.0);
      CHECK(ev::boost_generic_pr(point_mass_one, a, 20).value >=
            1.0 / (2.0 * a));
    }
  }

  SUBCASE("bounded support below the threshold saturates at the cap") {
    const ev::GenericBoost g = ev::boost_generic_pr(point_mass_zero, 0.05, 10);
    CHECK(g.saturated);
    CHECK(g.value == 1e6);
  }

  SUBCASE("nonincreasing in alpha") {
    double prev = kInf;
    for (double a : {0.005, 0.01, 0.05, 0.1, 0.2, 0.4}) {
      const double v = ev::boost_generic_pr(exp1_survival, a, 50).value;
      CAPTURE(a);
      CHECK(v <= prev + 1e-9);
      prev = v;
    }
  }

  SUBCASE("validation") {
    CHECK_THROWS_AS(ev::boost_generic_pr(exp1_survival, 1.0, 10),
                    std::domain_error);
    CHECK_THROWS_AS(ev::boost_generic_pr(exp1_survival, 0.05, 0),
                    std::domain_error);
    CHECK_THROWS_AS(ev::boost_generic_pr(nullptr, 0.05, 10),
                    std::invalid_argument);
  }
}

TEST_CASE("realized false discovery proportion") {
  SUBCASE("empty rejection set gives zero") {
    const ev::DiscoverySet d = ev::ebh_reject({0.0, 0.0}, 0.1);
    CHECK(ev::fdp(d, {0, 1}) == 0.0);
  }
  SUBCASE("all rejections null gives one") {
    const ev::DiscoverySet d = ev::ebh_reject({8.0, 8.0, 0.0, 0.0}, 0.5);
    REQUIRE(d.k_star == 2);
    CHECK(ev::fdp(d, {0, 1}) == 1.0);
    CHECK(ev::fdp(d, {0, 1, 2, 3}) == 1.0);
  }
  SUBCASE("partial overlap counts only rejected nulls") {
    // All five e-values clear every threshold, so all are rejected.
    const std::vector<double> e(5, 100.0);
    const ev::DiscoverySet d = ev::ebh_reject(e, 0.5);
    REQUIRE(d.k_star == 5);
    CHECK(ev::fdp(d, {0, 3}) == doctest::Approx(0.4));
    CHECK(ev::fdp(d, {1}) == doctest::Approx(0.2));
    CHECK(ev::fdp(d, {}) == 0.0);
  }
}

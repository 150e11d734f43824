#include <doctest.h>

#include <cmath>

#include "spprt/calibration.hpp"
#include "spprt/errors.hpp"
#include "support.hpp"

using namespace spprt;
using doctest::Approx;

namespace {

CalibrationSpec trial_spec(int horizon, double lambda0, double lambda1) {
  CalibrationSpec s{testing::trial_config(horizon, lambda0, lambda1)};
  s.target_alpha = 0.05;
  s.target_beta = 0.10;
  s.init_lambda0 = lambda0;
  s.init_lambda1 = lambda1;
  return s;
}

}  // namespace

TEST_CASE("relative distance") {
  CHECK(relative_distance(0.05, 0.10, 0.05, 0.10) == 0.0);
  CHECK(relative_distance(0.10, 0.10, 0.05, 0.10) == Approx(1.0));
  CHECK(relative_distance(0.05, 0.12, 0.05, 0.10) == Approx(0.2));
}

TEST_CASE("spec validation") {
  auto s = trial_spec(3, 229.7, 79.1);
  s.target_alpha = 0.0;
  CHECK_THROWS_AS(calibrate(s), ConfigError);
  s = trial_spec(3, -1.0, 79.1);
  CHECK_THROWS_AS(calibrate(s), ConfigError);
  CHECK_THROWS_AS(calibration_objective(trial_spec(3, 1, 1), 0.0, 1.0), DomainError);
}

TEST_CASE("objective at the published three-stage multipliers") {
  const double obj = calibration_objective(trial_spec(3, 229.7, 79.1), 229.7, 79.1);
  CHECK(obj <= 0.02);
}

TEST_CASE("initial point inside tolerance returns after one evaluation") {
  auto s = trial_spec(3, 229.7, 79.1);
  s.dist_tol = 0.05;
  const auto r = calibrate(s);
  CHECK(r.evaluations == 1);
  CHECK(r.iterations == 0);
  CHECK(r.converged);
  CHECK(r.lambda0 == Approx(229.7).epsilon(1e-14));
  REQUIRE(r.trace.size() == 1);
}

TEST_CASE("three-stage calibration from a distant start") {
  auto s = trial_spec(3, 150.0, 120.0);
  const double start = calibration_objective(s, 150.0, 120.0);
  const auto r = calibrate(s);
  CHECK(r.objective <= start);
  CHECK(r.objective <= 0.1);
  CHECK(r.profile.alpha == Approx(0.05).epsilon(0.1));
  CHECK(r.profile.beta == Approx(0.10).epsilon(0.1));
  REQUIRE(r.plan);
  CHECK(r.trace.size() == static_cast<std::size_t>(r.evaluations));

  const auto again = calibrate(s);
  CHECK(again.lambda0 == r.lambda0);
  CHECK(again.lambda1 == r.lambda1);
  CHECK(again.objective == r.objective);
  CHECK(again.evaluations == r.evaluations);
}

TEST_CASE("unreachable targets raise calibration failure with the best point") {
  CalibrationSpec s{testing::make_config(0.2, 0.8, {1}, CostModel::affine(0.0, 1.0), 0.0, 1, 1, 1)};
  s.target_alpha = 1e-4;
  s.target_beta = 1e-4;
  s.max_iter = 10;
  try {
    calibrate(s);
    FAIL("expected failure");
  } catch (const CalibrationFailed& e) {
    CHECK(e.best().objective > 0.1);
    CHECK(e.best().plan);
    CHECK(e.best().evaluations > 1);
  }
}

TEST_CASE("diagnostic: error probabilities fall as their multiplier grows") {
  const double l0 = 229.7;
  const double l1 = 79.1;
  const double f[3] = {0.8, 1.0, 1.25};
  double alpha[3][3];
  double beta[3][3];
  for (int i = 0; i < 3; ++i) {
    for (int k = 0; k < 3; ++k) {
      const auto p = profile(niod(testing::trial_config(3, l0 * f[i], l1 * f[k])));
      alpha[i][k] = p.alpha;
      beta[i][k] = p.beta;
    }
  }
  int agree = 0;
  int total = 0;
  for (int i = 0; i < 3; ++i) {
    for (int k = 0; k + 1 < 3; ++k) {
      agree += alpha[k + 1][i] <= alpha[k][i] ? 1 : 0;
      agree += beta[i][k + 1] <= beta[i][k] ? 1 : 0;
      total += 2;
    }
  }
  MESSAGE("monotone comparisons: " << agree << " of " << total);
  WARN(agree >= total - 1);
}

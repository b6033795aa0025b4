#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "soekf/errors.hpp"
#include "soekf/mc_oracle.hpp"
#include "soekf/rng.hpp"

#include <cmath>
#include <cstdlib>

using namespace soekf;

namespace {

StateEstimate reference_prior() {
  EllipseParams shape;
  shape.center = Vec2(1000, 1000);
  shape.alpha = M_PI / 6.0;
  shape.half_lengths = Vec2(2, 1);
  Eigen::VectorXd var(5);
  var << 9, 9, 1.0 / 9.0, 1, 1;
  return make_state(shape, var.asDiagonal());
}

bool moments_equal(const PredictedMoments& a, const PredictedMoments& b) {
  return a.z_hat == b.z_hat && a.innovation_cov == b.innovation_cov &&
         a.state_meas_cross == b.state_meas_cross;
}

}  // namespace

TEST_CASE("point mass prior reproduces g exactly") {
  EllipseParams shape;
  shape.center = Vec2(4, -2);
  shape.alpha = 0.9;
  shape.half_lengths = Vec2(2, 1);
  const StateEstimate est = make_state(shape, Eigen::MatrixXd::Zero(5, 5));
  OracleConfig cfg;
  cfg.sample_count = 1000;
  cfg.seed = 5;
  const PredictedMoments pm = sample_moments(est, Mat2::Zero(), 0.0, 0.0, cfg);
  CHECK(pm.z_hat.cwiseAbs().maxCoeff() < 1e-12);
  CHECK(pm.innovation_cov.cwiseAbs().maxCoeff() < 1e-12);
  CHECK(pm.state_meas_cross.cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("deterministic shape block matches the closed-form mean") {
  EllipseParams shape;
  shape.half_lengths = Vec2(2, 1);
  const StateEstimate est = make_state(shape, Eigen::MatrixXd::Zero(5, 5));
  OracleConfig cfg;
  cfg.sample_count = 100000;
  cfg.seed = 99;
  const PredictedMoments pm =
      sample_moments(est, Mat2::Zero(), 0.25, 0.25, cfg);
  // E[z3] = c l1^2 = 1; sd(z3) = sqrt(2) c l1^2, so 3 SE at this N is ~0.014.
  const double se3 = std::sqrt(2.0) * 1.0 / std::sqrt(100000.0);
  CHECK(std::abs(pm.z_hat[2] - 1.0) < 3.0 * se3);
  const double se4 = std::sqrt(2.0) * 0.25 / std::sqrt(100000.0);
  CHECK(std::abs(pm.z_hat[3] - 0.25) < 3.0 * se4);
}

TEST_CASE("same seed gives bitwise identical moments") {
  const StateEstimate est = reference_prior();
  OracleConfig cfg;
  cfg.sample_count = 20000;
  cfg.seed = 1234;
  const PredictedMoments a =
      sample_moments(est, Mat2::Identity(), 0.25, 0.25, cfg);
  const PredictedMoments b =
      sample_moments(est, Mat2::Identity(), 0.25, 0.25, cfg);
  CHECK(moments_equal(a, b));

  cfg.seed = 1235;
  const PredictedMoments c =
      sample_moments(est, Mat2::Identity(), 0.25, 0.25, cfg);
  CHECK_FALSE(moments_equal(a, c));
}

TEST_CASE("result does not depend on the thread count") {
  const StateEstimate est = reference_prior();
  OracleConfig cfg;
  cfg.sample_count = 200000;  // several reduction blocks
  cfg.seed = 777;

  setenv("SOEKF_THREADS", "1", 1);
  const PredictedMoments serial =
      sample_moments(est, Mat2::Identity(), 0.25, 0.25, cfg);
  setenv("SOEKF_THREADS", "4", 1);
  const PredictedMoments threaded =
      sample_moments(est, Mat2::Identity(), 0.25, 0.25, cfg);
  unsetenv("SOEKF_THREADS");
  CHECK(moments_equal(serial, threaded));
}

TEST_CASE("sample mean converges to the exact linear block at rate 1/sqrt(N)") {
  // The linear block of z has exact mean zero; the sample error should
  // shrink roughly as 1/sqrt(N) (allow slack for randomness).
  const StateEstimate est = reference_prior();
  double err_small = 0.0, err_large = 0.0;
  {
    OracleConfig cfg;
    cfg.sample_count = 10000;
    cfg.seed = 42;
    err_small = sample_moments(est, Mat2::Identity(), 0.25, 0.25, cfg)
                    .z_hat.head<2>()
                    .cwiseAbs()
                    .maxCoeff();
  }
  {
    OracleConfig cfg;
    cfg.sample_count = 1000000;
    cfg.seed = 42;
    err_large = sample_moments(est, Mat2::Identity(), 0.25, 0.25, cfg)
                    .z_hat.head<2>()
                    .cwiseAbs()
                    .maxCoeff();
  }
  CHECK(err_large < err_small);
  CHECK(err_large < 5.0 * std::sqrt(10.5 / 1e6));  // ~5 SE guard
}

TEST_CASE("tiny sample counts are rejected") {
  const StateEstimate est = reference_prior();
  OracleConfig cfg;
  cfg.sample_count = 999;
  CHECK_THROWS_AS(sample_moments(est, Mat2::Zero(), 0.25, 0.25, cfg),
                  std::invalid_argument);
}

TEST_CASE("indefinite prior covariance is rejected") {
  StateEstimate est = reference_prior();
  est.cov(0, 0) = -1.0;
  OracleConfig cfg;
  cfg.sample_count = 1000;
  CHECK_THROWS_AS(sample_moments(est, Mat2::Zero(), 0.25, 0.25, cfg),
                  DegenerateCovariance);
}

TEST_CASE("uninformative measurement leaves the posterior near the prior") {
  // The residual shift is pure sampling noise in the estimated gain and
  // shrinks as 1/sqrt(N); 1e6 samples put it well under the gate.
  const StateEstimate est = reference_prior();
  OracleConfig cfg;
  cfg.sample_count = 1000000;
  cfg.seed = 31;
  const Mat2 huge_q = 1e6 * Mat2::Identity();
  const StateEstimate post = mc_measurement_update(
      est, est.center() + Vec2(1, 1), huge_q, 0.25, 0.25, cfg);
  CHECK((post.mean - est.mean).cwiseAbs().maxCoeff() < 1e-2);
}

TEST_CASE("oracle update is self-consistent and brackets the SOEKF") {
  const StateEstimate est = reference_prior();
  const Vec2 y(1001, 1001);
  const Mat2 q = Mat2::Identity();

  OracleConfig small;
  small.sample_count = 100000;
  small.seed = 60001;
  OracleConfig large;
  large.sample_count = 1000000;
  large.seed = 60002;

  const StateEstimate post_small =
      mc_measurement_update(est, y, q, 0.25, 0.25, small);
  const StateEstimate post_large =
      mc_measurement_update(est, y, q, 0.25, 0.25, large);
  const StateEstimate post_soekf = measurement_update(est, y, q, 0.25);

  // Posterior means agree within a few prior standard deviations scaled by
  // the sampling noise; the dominant entries are O(1), so gate loosely but
  // meaningfully.
  CHECK((post_small.mean - post_large.mean).cwiseAbs().maxCoeff() < 0.05);
  CHECK((post_soekf.mean - post_large.mean).cwiseAbs().maxCoeff() < 0.1);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "soekf/errors.hpp"
#include "soekf/process_models.hpp"

#include <Eigen/Eigenvalues>

using namespace soekf;

TEST_CASE("static model is the identity") {
  const ProcessModel pm = make_static_model(5);
  CHECK(pm.transition.isApprox(Eigen::MatrixXd::Identity(5, 5)));
  CHECK(pm.noise_cov.cwiseAbs().maxCoeff() == 0.0);

  EllipseParams shape;
  shape.center = Vec2(3, 4);
  shape.half_lengths = Vec2(2, 1);
  StateEstimate est = make_state(shape, Eigen::MatrixXd::Identity(5, 5));
  StateEstimate rolled = est;
  for (int i = 0; i < 100; ++i) rolled = time_update(rolled, pm);
  CHECK(rolled.mean.isApprox(est.mean));
  CHECK(rolled.cov.isApprox(est.cov));

  CHECK_THROWS_AS(make_static_model(6), DimensionMismatch);
}

TEST_CASE("ncv model advances the center by the velocity") {
  const ProcessModel pm = make_ncv_model();
  Eigen::VectorXd mean(7);
  mean << 0, 0, 0, 1, 2, 1.5, 0;
  Eigen::VectorXd want(7);
  want << 1.5, 0, 0, 1, 2, 1.5, 0;
  CHECK((pm.transition * mean).isApprox(want));

  NcvParams quiet;
  quiet.sigma_pos = quiet.sigma_alpha = quiet.sigma_len = quiet.sigma_vel = 0.0;
  CHECK(make_ncv_model(quiet).noise_cov.cwiseAbs().maxCoeff() == 0.0);

  // Default noise diagonal: (0.01, 0.01, 0.01, 0.01, 0.01, 0.1, 0.1).
  const Eigen::VectorXd diag = pm.noise_cov.diagonal();
  CHECK(diag[0] == doctest::Approx(0.01));
  CHECK(diag[2] == doctest::Approx(0.01));
  CHECK(diag[4] == doctest::Approx(0.01));
  CHECK(diag[5] == doctest::Approx(0.1));
}

TEST_CASE("ncv transition has spectral radius one") {
  const ProcessModel pm = make_ncv_model();
  const Eigen::VectorXcd eigs =
      Eigen::EigenSolver<Eigen::MatrixXd>(pm.transition).eigenvalues();
  CHECK(eigs.cwiseAbs().maxCoeff() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("deterministic part forms a semigroup in dt") {
  NcvParams half;
  half.dt = 1.0;
  NcvParams full;
  full.dt = 2.0;
  const Eigen::MatrixXd a1 = make_ncv_model(half).transition;
  const Eigen::MatrixXd a2 = make_ncv_model(full).transition;
  CHECK((a1 * a1 - a2).cwiseAbs().maxCoeff() < 1e-15);
}

#include "soekf/filter.hpp"

#include "soekf/errors.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

namespace soekf {

namespace {

Mat9 augmented_covariance(const StateEstimate& est, const Mat2& Q, double c) {
  Mat9 gamma = Mat9::Zero();
  gamma.topLeftCorner<kShapeDim, kShapeDim>() =
      est.cov.topLeftCorner(kShapeDim, kShapeDim);
  gamma(kAugH1, kAugH1) = c;
  gamma(kAugH2, kAugH2) = c;
  gamma.block<2, 2>(kAugV1, kAugV1) = Q;
  return gamma;
}

}  // namespace

PredictedMoments predict_moments(const StateEstimate& est, const Mat2& Q,
                                 double c, const UpdateOptions& opts) {
  const int n = est.dim();
  const Mat9 gamma = augmented_covariance(est, Q, c);

  DerivativeBundle deriv;
  if (opts.mode == DerivativeMode::kSubstituted) {
    deriv = substituted_derivatives(est.mean.head<kShapeDim>(), c);
  } else {
    AugmentedVector at_mean = AugmentedVector::Zero();
    at_mean.head<kShapeDim>() = est.mean.head<kShapeDim>();
    deriv = raw_derivatives(at_mean, est.center());
  }

  std::array<Mat9, 5> hg;
  for (int l = 0; l < 5; ++l) hg[l] = deriv.hessians[l] * gamma;

  PredictedMoments pm;
  // g at the mean vanishes because the measurement is centered on the
  // current center estimate, so only the trace correction remains.
  for (int l = 0; l < 5; ++l) pm.z_hat[l] = 0.5 * hg[l].trace();

  Mat5 s = deriv.jacobian * gamma * deriv.jacobian.transpose();
  for (int l = 0; l < 5; ++l) {
    for (int r = l; r < 5; ++r) {
      const double t = hg[l].cwiseProduct(hg[r].transpose()).sum();
      s(l, r) += 0.5 * t;
      if (r != l) s(r, l) = s(l, r);
    }
  }
  pm.innovation_cov = 0.5 * (s + s.transpose());

  // Cov[x, z] = C Jx^T with zero Jacobian columns for the kinematic block.
  Eigen::MatrixXd jx = Eigen::MatrixXd::Zero(5, n);
  jx.leftCols<kShapeDim>() = deriv.jacobian.leftCols<kShapeDim>();
  pm.state_meas_cross = est.cov * jx.transpose();
  return pm;
}

StateEstimate apply_pseudo_update(const StateEstimate& est, const Vec5& z,
                                  const PredictedMoments& pm,
                                  const UpdateOptions& opts) {
  // Conditioning is judged on the raw S; the jitter only stabilizes the solve.
  Eigen::SelfAdjointEigenSolver<Mat5> eig(pm.innovation_cov);
  const double lmin = eig.eigenvalues().minCoeff();
  const double lmax = eig.eigenvalues().maxCoeff();
  if (!(lmin > 0.0) || lmax > opts.max_condition * lmin) {
    throw SingularInnovation("innovation covariance is numerically singular");
  }

  const Mat5 s = pm.innovation_cov + opts.innovation_jitter * Mat5::Identity();
  const Eigen::LDLT<Mat5> ldlt(s);
  StateEstimate out = est;
  out.mean += pm.state_meas_cross * ldlt.solve(z - pm.z_hat);
  out.cov -= pm.state_meas_cross *
             ldlt.solve(pm.state_meas_cross.transpose());
  out.symmetrize();

  // Sampled moments need not be mutually consistent, so the downdate can
  // leave the covariance slightly indefinite; project back onto the PSD cone.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> cov_eig(out.cov);
  const double floor = -1e-9 * std::max(cov_eig.eigenvalues().maxCoeff(), 1.0);
  if (cov_eig.eigenvalues().minCoeff() < floor) {
    const Eigen::VectorXd clamped =
        cov_eig.eigenvalues().cwiseMax(Eigen::VectorXd::Zero(est.dim()));
    out.cov = cov_eig.eigenvectors() * clamped.asDiagonal() *
              cov_eig.eigenvectors().transpose();
    out.symmetrize();
  }

  // The measurement map is even in each semi-axis length and its gradient
  // vanishes at l = 0, so a fixed positive floor would be an absorbing wall.
  // Reflect instead: the mirrored state describes the same ellipse.
  for (int i : {kIdxL1, kIdxL2}) {
    if (out.mean[i] <= 0.0) {
      out.mean[i] = std::max(opts.length_floor, -out.mean[i]);
      if (opts.clamp_events != nullptr) ++*opts.clamp_events;
    }
  }
  return out;
}

StateEstimate measurement_update(const StateEstimate& est, const Vec2& y,
                                 const Mat2& Q, double c,
                                 const UpdateOptions& opts) {
  const PredictedMoments pm = predict_moments(est, Q, c, opts);
  return apply_pseudo_update(est, pseudo_measurement(y, est.center()), pm,
                             opts);
}

StateEstimate batch_update(const StateEstimate& est,
                           const MeasurementFrame& frame, const Mat2& Q,
                           double c, const UpdateOptions& opts) {
  StateEstimate cur = est;
  for (const Vec2& y : frame.points) {
    cur = measurement_update(cur, y, Q, c, opts);
  }
  return cur;
}

StateEstimate time_update(const StateEstimate& est, const ProcessModel& pm) {
  const int n = est.dim();
  if (pm.transition.rows() != n || pm.transition.cols() != n ||
      pm.noise_cov.rows() != n || pm.noise_cov.cols() != n) {
    throw DimensionMismatch("process model does not match the state size");
  }
  StateEstimate out = est;
  out.mean = pm.transition * est.mean;
  out.cov =
      pm.transition * est.cov * pm.transition.transpose() + pm.noise_cov;
  out.symmetrize();
  return out;
}

double equal_spread(const NoiseConfig& noise) {
  if (noise.c1 != noise.c2) {
    throw MismatchedSpread("the SOEKF requires c1 == c2");
  }
  return noise.c1;
}

}  // namespace soekf

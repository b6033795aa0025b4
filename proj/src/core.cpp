#include "soekf/core.hpp"

#include "soekf/errors.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace soekf {

EllipseParams StateEstimate::shape() const {
  EllipseParams p;
  p.center = mean.head<2>();
  p.alpha = mean[kIdxAlpha];
  p.half_lengths = mean.segment<2>(kIdxL1);
  return p;
}

void StateEstimate::symmetrize() {
  cov = 0.5 * (cov + cov.transpose()).eval();
}

StateEstimate make_state(const EllipseParams& shape,
                         const Eigen::MatrixXd& cov) {
  StateEstimate est;
  est.mean.resize(kShapeDim);
  est.mean << shape.center, shape.alpha, shape.half_lengths;
  est.cov = cov;
  est.kinematic_extra_dim = 0;
  if (cov.rows() != kShapeDim || cov.cols() != kShapeDim) {
    throw DimensionMismatch("state covariance must be 5x5");
  }
  return est;
}

StateEstimate make_state(const EllipseParams& shape, const Vec2& velocity,
                         const Eigen::MatrixXd& cov) {
  StateEstimate est;
  est.mean.resize(kShapeDim + 2);
  est.mean << shape.center, shape.alpha, shape.half_lengths, velocity;
  est.cov = cov;
  est.kinematic_extra_dim = 2;
  if (cov.rows() != est.dim() || cov.cols() != est.dim()) {
    throw DimensionMismatch("state covariance must be 7x7");
  }
  return est;
}

std::pair<Vec2, Vec2> axis_unit_vectors(double alpha) {
  const double ca = std::cos(alpha);
  const double sa = std::sin(alpha);
  return {Vec2(ca, sa), Vec2(-sa, ca)};
}

Mat2 shape_to_matrix(const EllipseParams& p) {
  const double ca = std::cos(p.alpha);
  const double sa = std::sin(p.alpha);
  const double l1sq = p.half_lengths[0] * p.half_lengths[0];
  const double l2sq = p.half_lengths[1] * p.half_lengths[1];
  Mat2 x;
  x(0, 0) = l1sq * ca * ca + l2sq * sa * sa;
  x(1, 1) = l1sq * sa * sa + l2sq * ca * ca;
  x(0, 1) = (l1sq - l2sq) * sa * ca;
  x(1, 0) = x(0, 1);
  return x;
}

Eigen::MatrixXd psd_sqrt(const Eigen::MatrixXd& m, double rel_tol) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m);
  if (eig.info() != Eigen::Success) {
    throw DegenerateCovariance("eigendecomposition failed");
  }
  Eigen::VectorXd vals = eig.eigenvalues();
  const double scale = std::max(vals.cwiseAbs().maxCoeff(), 1.0);
  for (int i = 0; i < vals.size(); ++i) {
    if (vals[i] < -rel_tol * scale) {
      throw DegenerateCovariance("covariance has a negative eigenvalue");
    }
    vals[i] = std::sqrt(std::max(vals[i], 0.0));
  }
  return eig.eigenvectors() * vals.asDiagonal();
}

}  // namespace soekf

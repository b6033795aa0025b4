#pragma once

#include <Eigen/Core>

#include <utility>

namespace soekf {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat2 = Eigen::Matrix2d;
using Vec5 = Eigen::Matrix<double, 5, 1>;
using Mat5 = Eigen::Matrix<double, 5, 5>;
using Vec9 = Eigen::Matrix<double, 9, 1>;
using Mat9 = Eigen::Matrix<double, 9, 9>;

// State vector layout: [m1, m2, alpha, l1, l2, r1, ..., r_{n_r}].
inline constexpr int kIdxM1 = 0;
inline constexpr int kIdxM2 = 1;
inline constexpr int kIdxAlpha = 2;
inline constexpr int kIdxL1 = 3;
inline constexpr int kIdxL2 = 4;
inline constexpr int kShapeDim = 5;

// Distribution family of the multiplicative noise h. Only the simulator and
// the sampling oracle care; the filter works with the second moments c1, c2.
enum class HFamily { kGaussian, kUniform };

struct EllipseParams {
  Vec2 center = Vec2::Zero();        // [m]
  double alpha = 0.0;                // orientation [rad]
  Vec2 half_lengths = Vec2::Ones();  // semi-axis lengths l1, l2 [m]
};

struct NoiseConfig {
  double c1 = 0.25;              // E[h1^2]
  double c2 = 0.25;              // E[h2^2]
  Mat2 meas_cov = Mat2::Zero();  // additive measurement noise covariance Q
  HFamily h_family = HFamily::kGaussian;
};

// Gaussian belief over [m, alpha, l] plus n_r trailing kinematic entries
// (velocity). Value type; updates return fresh instances.
struct StateEstimate {
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;
  int kinematic_extra_dim = 0;  // n_r: 0 (static) or 2 (velocity)

  int dim() const { return kShapeDim + kinematic_extra_dim; }
  EllipseParams shape() const;
  Vec2 center() const { return mean.head<2>(); }
  void symmetrize();
};

StateEstimate make_state(const EllipseParams& shape, const Eigen::MatrixXd& cov);
StateEstimate make_state(const EllipseParams& shape, const Vec2& velocity,
                         const Eigen::MatrixXd& cov);

// e1 = [cos a, sin a], e2 = [-sin a, cos a].
std::pair<Vec2, Vec2> axis_unit_vectors(double alpha);

// X = R diag(l1^2, l2^2) R^T, written out entrywise.
Mat2 shape_to_matrix(const EllipseParams& p);

// Symmetric square root of a PSD matrix via eigendecomposition; eigenvalues
// in [-tol*max, 0) are clamped to zero, anything lower throws
// DegenerateCovariance.
Eigen::MatrixXd psd_sqrt(const Eigen::MatrixXd& m, double rel_tol = 1e-9);

}  // namespace soekf

#include "soekf/process_models.hpp"

#include "soekf/errors.hpp"

namespace soekf {

ProcessModel make_static_model(int dim) {
  if (dim != 5 && dim != 7) {
    throw DimensionMismatch("static model supports dim 5 or 7");
  }
  return {Eigen::MatrixXd::Identity(dim, dim),
          Eigen::MatrixXd::Zero(dim, dim)};
}

ProcessModel make_ncv_model(const NcvParams& p) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(7, 7);
  a(kIdxM1, kShapeDim) = p.dt;
  a(kIdxM2, kShapeDim + 1) = p.dt;

  Eigen::VectorXd var(7);
  var << p.sigma_pos * p.sigma_pos, p.sigma_pos * p.sigma_pos,
      p.sigma_alpha * p.sigma_alpha, p.sigma_len * p.sigma_len,
      p.sigma_len * p.sigma_len, p.sigma_vel * p.sigma_vel,
      p.sigma_vel * p.sigma_vel;
  return {a, var.asDiagonal()};
}

}  // namespace soekf

#pragma once

#include "soekf/derivatives.hpp"
#include "soekf/measurement_model.hpp"

namespace soekf {

// Predicted pseudo-measurement moments.
struct PredictedMoments {
  Vec5 z_hat = Vec5::Zero();            // E[z]
  Mat5 innovation_cov = Mat5::Zero();   // S = Cov[z, z]
  Eigen::MatrixXd state_meas_cross;     // M = Cov[x, z], (5 + n_r) x 5
};

struct ProcessModel {
  Eigen::MatrixXd transition;  // A
  Eigen::MatrixXd noise_cov;   // P
};

enum class DerivativeMode {
  kSubstituted,  // closed forms with E[h^2] -> c applied
  kNaive,        // raw derivatives at h = 0; shape entries never move
};

struct UpdateOptions {
  DerivativeMode mode = DerivativeMode::kSubstituted;
  double length_floor = 1e-3;        // [m], applied when a post-update l <= 0
  double innovation_jitter = 1e-12;  // added to S before factorization
  double max_condition = 1e12;       // SingularInnovation beyond this
  int* clamp_events = nullptr;       // optional counter of length clamps
};

// Second-order Taylor moments of the pseudo-measurement under the current
// belief: z_hat_l = g_l(mean) + Tr(H_l Gamma)/2,
// S_lr = J_l Gamma J_r^T + Tr(H_l Gamma H_r Gamma)/2, M = C Jx^T.
// Gamma stacks the leading 5x5 covariance block, diag(c, c), and Q in the
// augmented order; velocity rows of M flow through the covariance's
// shape-velocity block (zero Jacobian columns for r).
PredictedMoments predict_moments(const StateEstimate& est, const Mat2& Q,
                                 double c, const UpdateOptions& opts = {});

// Kalman step for an externally supplied z and predicted moments (shared by
// the closed-form filter and the sampling oracle).
StateEstimate apply_pseudo_update(const StateEstimate& est, const Vec5& z,
                                  const PredictedMoments& pm,
                                  const UpdateOptions& opts = {});

// Single measurement update: center shift, pseudo-measurement, Kalman step.
StateEstimate measurement_update(const StateEstimate& est, const Vec2& y,
                                 const Mat2& Q, double c,
                                 const UpdateOptions& opts = {});

// Sequential processing of one frame, in arrival order.
StateEstimate batch_update(const StateEstimate& est,
                           const MeasurementFrame& frame, const Mat2& Q,
                           double c, const UpdateOptions& opts = {});

// Linear time update: mean <- A mean, cov <- A C A^T + P.
StateEstimate time_update(const StateEstimate& est, const ProcessModel& pm);

// The shared spread the closed-form filter requires; throws MismatchedSpread
// if the config carries distinct c1, c2.
double equal_spread(const NoiseConfig& noise);

}  // namespace soekf

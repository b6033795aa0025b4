#pragma once

#include "soekf/filter.hpp"

#include <cstdint>

namespace soekf {

struct OracleConfig {
  std::int64_t sample_count = 10000;  // N; at least 1000
  std::uint64_t seed = 0;
  HFamily h_family = HFamily::kGaussian;
};

// Sampling-based moments of the pseudo-measurement: draws N joint samples of
// (x, h, v), pushes them through g_exact, and returns sample mean, covariance,
// and state cross-covariance. Deterministic given the seed and independent of
// the thread count (per-sample counter-based streams, fixed-size block
// reduction). Supports distinct spreads c1 != c2.
PredictedMoments sample_moments(const StateEstimate& est, const Mat2& Q,
                                double c1, double c2, const OracleConfig& cfg);

// Kalman update driven by sampled moments instead of the Taylor closed forms.
StateEstimate mc_measurement_update(const StateEstimate& est, const Vec2& y,
                                    const Mat2& Q, double c1, double c2,
                                    const OracleConfig& cfg,
                                    const UpdateOptions& opts = {});

}  // namespace soekf

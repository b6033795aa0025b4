#pragma once

#include "soekf/filter.hpp"

namespace soekf {

struct NcvParams {
  double dt = 1.0;  // [steps]
  // Process-noise standard deviations; squared on the P diagonal.
  double sigma_pos = 0.1;
  double sigma_alpha = 0.1;
  double sigma_len = 0.1;
  double sigma_vel = 0.31622776601683794;  // sqrt(0.1)
};

// Identity dynamics, zero noise. dim must be 5 or 7.
ProcessModel make_static_model(int dim);

// Nearly constant velocity on the center, random walk on the shape block:
// A = [[I2, 0, dt*I2], [0, I3, 0], [0, 0, I2]] over [m, alpha, l, r].
ProcessModel make_ncv_model(const NcvParams& p = {});

}  // namespace soekf

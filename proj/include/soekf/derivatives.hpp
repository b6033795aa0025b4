#pragma once

#include "soekf/measurement_model.hpp"

#include <array>

namespace soekf {

// First and second derivatives of the 5-component measurement map over the
// 9-dimensional augmented vector.
struct DerivativeBundle {
  Eigen::Matrix<double, 5, 9> jacobian;
  std::array<Mat9, 5> hessians;
};

// Exact derivatives of g_exact at gamma; the h-dependence is kept, so this is
// usable at any evaluation point (finite-difference checks, quadrature).
DerivativeBundle raw_derivatives(const AugmentedVector& gamma,
                                 const Vec2& m_hat);

// Closed-form derivatives with the squared multiplicative noise replaced by
// its expectation c. Equals the expectation of raw_derivatives over
// h ~ (0, diag(c, c)) at the centered state mean with v = 0. Only the
// orientation and semi-axis entries of shape_mean enter.
DerivativeBundle substituted_derivatives(const Vec5& shape_mean, double c);

// Same, but rejects distinct spreads: the closed forms assume c1 == c2.
// Throws MismatchedSpread otherwise.
DerivativeBundle substituted_derivatives(const Vec5& shape_mean, double c1,
                                         double c2);

}  // namespace soekf

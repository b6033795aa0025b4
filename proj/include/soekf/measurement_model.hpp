#pragma once

#include "soekf/core.hpp"

#include <vector>

namespace soekf {

// Augmented vector used by the derivative kernels:
// [m1, m2, alpha, l1, l2, h1, h2, v1, v2].
// The multiplicative noise precedes the additive noise; the closed-form
// derivative matrices assume exactly this column order.
using AugmentedVector = Vec9;
inline constexpr int kAugH1 = 5;
inline constexpr int kAugH2 = 6;
inline constexpr int kAugV1 = 7;
inline constexpr int kAugV2 = 8;
inline constexpr int kAugDim = 9;

struct MeasurementFrame {
  std::vector<Vec2> points;  // y_k^i [m]; may be empty (frame carries no info)
  int time_index = 0;
};

AugmentedVector make_augmented(const EllipseParams& x, const Vec2& h,
                               const Vec2& v);

// Noise-free measurement source: m + h1*l1*e1(alpha) + h2*l2*e2(alpha).
Vec2 measurement_source(const EllipseParams& x, const Vec2& h);

// Reduced 2-fold Kronecker square [a1^2, a2^2, a1*a2].
Vec3 kron2(const Vec2& a);

// z = [y - m_hat; kron2(y - m_hat)].
Vec5 pseudo_measurement(const Vec2& y, const Vec2& m_hat);

// The full measurement map: stacks the centered measurement with its
// Kronecker square, evaluated directly from the augmented vector.
Vec5 g_exact(const AugmentedVector& gamma, const Vec2& m_hat);

}  // namespace soekf

#include "soekf/measurement_model.hpp"

#include <cmath>

namespace soekf {

AugmentedVector make_augmented(const EllipseParams& x, const Vec2& h,
                               const Vec2& v) {
  AugmentedVector g;
  g << x.center, x.alpha, x.half_lengths, h, v;
  return g;
}

Vec2 measurement_source(const EllipseParams& x, const Vec2& h) {
  const auto [e1, e2] = axis_unit_vectors(x.alpha);
  return x.center + h[0] * x.half_lengths[0] * e1 +
         h[1] * x.half_lengths[1] * e2;
}

Vec3 kron2(const Vec2& a) {
  return Vec3(a[0] * a[0], a[1] * a[1], a[0] * a[1]);
}

Vec5 pseudo_measurement(const Vec2& y, const Vec2& m_hat) {
  const Vec2 d = y - m_hat;
  Vec5 z;
  z << d, kron2(d);
  return z;
}

Vec5 g_exact(const AugmentedVector& gamma, const Vec2& m_hat) {
  const double ca = std::cos(gamma[kIdxAlpha]);
  const double sa = std::sin(gamma[kIdxAlpha]);
  const double d1 = gamma[kIdxM1] - m_hat[0] +
                    gamma[kAugH1] * gamma[kIdxL1] * ca -
                    gamma[kAugH2] * gamma[kIdxL2] * sa + gamma[kAugV1];
  const double d2 = gamma[kIdxM2] - m_hat[1] +
                    gamma[kAugH1] * gamma[kIdxL1] * sa +
                    gamma[kAugH2] * gamma[kIdxL2] * ca + gamma[kAugV2];
  Vec5 z;
  z << d1, d2, d1 * d1, d2 * d2, d1 * d2;
  return z;
}

}  // namespace soekf

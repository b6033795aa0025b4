#include "soekf/derivatives.hpp"

#include "soekf/errors.hpp"

#include <cmath>

namespace soekf {

namespace {

void set_sym(Mat9& m, int i, int j, double v) {
  m(i, j) = v;
  m(j, i) = v;
}

}  // namespace

// The centered measurement d = h(x, v, h) - m_hat has components
//   d1 = m1 - mhat1 + h1 l1 cos(a) - h2 l2 sin(a) + v1
//   d2 = m2 - mhat2 + h1 l1 sin(a) + h2 l2 cos(a) + v2
// and g = [d1, d2, d1^2, d2^2, d1 d2]. Everything below follows from the
// gradients and Hessians of d1, d2 via the product rule.
DerivativeBundle raw_derivatives(const AugmentedVector& gamma,
                                 const Vec2& m_hat) {
  const double a = gamma[kIdxAlpha];
  const double l1 = gamma[kIdxL1];
  const double l2 = gamma[kIdxL2];
  const double h1 = gamma[kAugH1];
  const double h2 = gamma[kAugH2];
  const double ca = std::cos(a);
  const double sa = std::sin(a);

  const double d1 =
      gamma[kIdxM1] - m_hat[0] + h1 * l1 * ca - h2 * l2 * sa + gamma[kAugV1];
  const double d2 =
      gamma[kIdxM2] - m_hat[1] + h1 * l1 * sa + h2 * l2 * ca + gamma[kAugV2];

  Vec9 gd1 = Vec9::Zero();
  gd1[kIdxM1] = 1.0;
  gd1[kIdxAlpha] = -h1 * l1 * sa - h2 * l2 * ca;
  gd1[kIdxL1] = h1 * ca;
  gd1[kIdxL2] = -h2 * sa;
  gd1[kAugH1] = l1 * ca;
  gd1[kAugH2] = -l2 * sa;
  gd1[kAugV1] = 1.0;

  Vec9 gd2 = Vec9::Zero();
  gd2[kIdxM2] = 1.0;
  gd2[kIdxAlpha] = h1 * l1 * ca - h2 * l2 * sa;
  gd2[kIdxL1] = h1 * sa;
  gd2[kIdxL2] = h2 * ca;
  gd2[kAugH1] = l1 * sa;
  gd2[kAugH2] = l2 * ca;
  gd2[kAugV2] = 1.0;

  Mat9 hd1 = Mat9::Zero();
  hd1(kIdxAlpha, kIdxAlpha) = -h1 * l1 * ca + h2 * l2 * sa;
  set_sym(hd1, kIdxAlpha, kIdxL1, -h1 * sa);
  set_sym(hd1, kIdxAlpha, kIdxL2, -h2 * ca);
  set_sym(hd1, kIdxAlpha, kAugH1, -l1 * sa);
  set_sym(hd1, kIdxAlpha, kAugH2, -l2 * ca);
  set_sym(hd1, kIdxL1, kAugH1, ca);
  set_sym(hd1, kIdxL2, kAugH2, -sa);

  Mat9 hd2 = Mat9::Zero();
  hd2(kIdxAlpha, kIdxAlpha) = -h1 * l1 * sa - h2 * l2 * ca;
  set_sym(hd2, kIdxAlpha, kIdxL1, h1 * ca);
  set_sym(hd2, kIdxAlpha, kIdxL2, -h2 * sa);
  set_sym(hd2, kIdxAlpha, kAugH1, l1 * ca);
  set_sym(hd2, kIdxAlpha, kAugH2, -l2 * sa);
  set_sym(hd2, kIdxL1, kAugH1, sa);
  set_sym(hd2, kIdxL2, kAugH2, ca);

  DerivativeBundle out;
  out.jacobian.row(0) = gd1.transpose();
  out.jacobian.row(1) = gd2.transpose();
  out.jacobian.row(2) = 2.0 * d1 * gd1.transpose();
  out.jacobian.row(3) = 2.0 * d2 * gd2.transpose();
  out.jacobian.row(4) = (d2 * gd1 + d1 * gd2).transpose();
  out.hessians[0] = hd1;
  out.hessians[1] = hd2;
  out.hessians[2] = 2.0 * (gd1 * gd1.transpose()) + 2.0 * d1 * hd1;
  out.hessians[3] = 2.0 * (gd2 * gd2.transpose()) + 2.0 * d2 * hd2;
  out.hessians[4] =
      gd1 * gd2.transpose() + gd2 * gd1.transpose() + d2 * hd1 + d1 * hd2;
  return out;
}

DerivativeBundle substituted_derivatives(const Vec5& shape_mean, double c) {
  const double a = shape_mean[kIdxAlpha];
  const double l1 = shape_mean[kIdxL1];
  const double l2 = shape_mean[kIdxL2];
  const double ca = std::cos(a);
  const double sa = std::sin(a);
  const double s2a = std::sin(2.0 * a);
  const double c2a = std::cos(2.0 * a);
  const double dl = l1 * l1 - l2 * l2;

  DerivativeBundle out;
  auto& j = out.jacobian;
  j.setZero();
  j(0, kIdxM1) = 1.0;
  j(0, kAugH1) = l1 * ca;
  j(0, kAugH2) = -l2 * sa;
  j(0, kAugV1) = 1.0;
  j(1, kIdxM2) = 1.0;
  j(1, kAugH1) = l1 * sa;
  j(1, kAugH2) = l2 * ca;
  j(1, kAugV2) = 1.0;
  j(2, kIdxAlpha) = -c * s2a * dl;
  j(2, kIdxL1) = 2.0 * l1 * c * ca * ca;
  j(2, kIdxL2) = 2.0 * l2 * c * sa * sa;
  j(3, kIdxAlpha) = c * s2a * dl;
  j(3, kIdxL1) = 2.0 * l1 * c * sa * sa;
  j(3, kIdxL2) = 2.0 * l2 * c * ca * ca;
  j(4, kIdxAlpha) = c * c2a * dl;
  j(4, kIdxL1) = l1 * c * s2a;
  j(4, kIdxL2) = -l2 * c * s2a;

  Mat9 h1m = Mat9::Zero();
  set_sym(h1m, kIdxAlpha, kAugH1, -l1 * sa);
  set_sym(h1m, kIdxAlpha, kAugH2, -l2 * ca);
  set_sym(h1m, kIdxL1, kAugH1, ca);
  set_sym(h1m, kIdxL2, kAugH2, -sa);

  Mat9 h2m = Mat9::Zero();
  set_sym(h2m, kIdxAlpha, kAugH1, l1 * ca);
  set_sym(h2m, kIdxAlpha, kAugH2, -l2 * sa);
  set_sym(h2m, kIdxL1, kAugH1, sa);
  set_sym(h2m, kIdxL2, kAugH2, ca);

  Mat9 h3m = Mat9::Zero();
  h3m(kIdxM1, kIdxM1) = 2.0;
  set_sym(h3m, kIdxM1, kAugH1, 2.0 * l1 * ca);
  set_sym(h3m, kIdxM1, kAugH2, -2.0 * l2 * sa);
  set_sym(h3m, kIdxM1, kAugV1, 2.0);
  h3m(kIdxAlpha, kIdxAlpha) = -2.0 * c * c2a * dl;
  set_sym(h3m, kIdxAlpha, kIdxL1, -2.0 * l1 * c * s2a);
  set_sym(h3m, kIdxAlpha, kIdxL2, 2.0 * l2 * c * s2a);
  h3m(kIdxL1, kIdxL1) = 2.0 * c * ca * ca;
  h3m(kIdxL2, kIdxL2) = 2.0 * c * sa * sa;
  h3m(kAugH1, kAugH1) = 2.0 * l1 * l1 * ca * ca;
  set_sym(h3m, kAugH1, kAugH2, -l1 * l2 * s2a);
  set_sym(h3m, kAugH1, kAugV1, 2.0 * l1 * ca);
  h3m(kAugH2, kAugH2) = 2.0 * l2 * l2 * sa * sa;
  set_sym(h3m, kAugH2, kAugV1, -2.0 * l2 * sa);
  h3m(kAugV1, kAugV1) = 2.0;

  Mat9 h4m = Mat9::Zero();
  h4m(kIdxM2, kIdxM2) = 2.0;
  set_sym(h4m, kIdxM2, kAugH1, 2.0 * l1 * sa);
  set_sym(h4m, kIdxM2, kAugH2, 2.0 * l2 * ca);
  set_sym(h4m, kIdxM2, kAugV2, 2.0);
  h4m(kIdxAlpha, kIdxAlpha) = 2.0 * c * c2a * dl;
  set_sym(h4m, kIdxAlpha, kIdxL1, 2.0 * l1 * c * s2a);
  set_sym(h4m, kIdxAlpha, kIdxL2, -2.0 * l2 * c * s2a);
  h4m(kIdxL1, kIdxL1) = 2.0 * c * sa * sa;
  h4m(kIdxL2, kIdxL2) = 2.0 * c * ca * ca;
  h4m(kAugH1, kAugH1) = 2.0 * l1 * l1 * sa * sa;
  set_sym(h4m, kAugH1, kAugH2, l1 * l2 * s2a);
  set_sym(h4m, kAugH1, kAugV2, 2.0 * l1 * sa);
  h4m(kAugH2, kAugH2) = 2.0 * l2 * l2 * ca * ca;
  set_sym(h4m, kAugH2, kAugV2, 2.0 * l2 * ca);
  h4m(kAugV2, kAugV2) = 2.0;

  Mat9 h5m = Mat9::Zero();
  set_sym(h5m, kIdxM1, kIdxM2, 1.0);
  set_sym(h5m, kIdxM1, kAugH1, l1 * sa);
  set_sym(h5m, kIdxM1, kAugH2, l2 * ca);
  set_sym(h5m, kIdxM1, kAugV2, 1.0);
  set_sym(h5m, kIdxM2, kAugH1, l1 * ca);
  set_sym(h5m, kIdxM2, kAugH2, -l2 * sa);
  set_sym(h5m, kIdxM2, kAugV1, 1.0);
  h5m(kIdxAlpha, kIdxAlpha) = -2.0 * c * s2a * dl;
  set_sym(h5m, kIdxAlpha, kIdxL1, 2.0 * l1 * c * c2a);
  set_sym(h5m, kIdxAlpha, kIdxL2, -2.0 * l2 * c * c2a);
  h5m(kIdxL1, kIdxL1) = c * s2a;
  h5m(kIdxL2, kIdxL2) = -c * s2a;
  h5m(kAugH1, kAugH1) = l1 * l1 * s2a;
  set_sym(h5m, kAugH1, kAugH2, l1 * l2 * c2a);
  set_sym(h5m, kAugH1, kAugV1, l1 * sa);
  set_sym(h5m, kAugH1, kAugV2, l1 * ca);
  h5m(kAugH2, kAugH2) = -l2 * l2 * s2a;
  set_sym(h5m, kAugH2, kAugV1, l2 * ca);
  set_sym(h5m, kAugH2, kAugV2, -l2 * sa);
  set_sym(h5m, kAugV1, kAugV2, 1.0);

  out.hessians = {h1m, h2m, h3m, h4m, h5m};
  return out;
}

DerivativeBundle substituted_derivatives(const Vec5& shape_mean, double c1,
                                         double c2) {
  if (c1 != c2) {
    throw MismatchedSpread(
        "closed-form derivatives require c1 == c2; got distinct spreads");
  }
  return substituted_derivatives(shape_mean, c1);
}

}  // namespace soekf

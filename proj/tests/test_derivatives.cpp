#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "soekf/derivatives.hpp"
#include "soekf/errors.hpp"
#include "soekf/rng.hpp"
#include "soekf/selftest.hpp"

#include <cmath>

using namespace soekf;

namespace {

AugmentedVector small_random_point(Prng& rng) {
  AugmentedVector g;
  g[kIdxM1] = rng.uniform_sym(0.1);
  g[kIdxM2] = rng.uniform_sym(0.1);
  g[kIdxAlpha] = rng.uniform01() * M_PI / 2.0;
  g[kIdxL1] = 0.3 + 0.5 * rng.uniform01();
  g[kIdxL2] = 0.3 + 0.5 * rng.uniform01();
  g[kAugH1] = rng.uniform_sym(0.3);
  g[kAugH2] = rng.uniform_sym(0.3);
  g[kAugV1] = rng.uniform_sym(0.1);
  g[kAugV2] = rng.uniform_sym(0.1);
  return g;
}

double max_rel_err(const DerivativeBundle& got, const DerivativeBundle& want) {
  auto rel = [](double a, double b) {
    return std::abs(a - b) / std::max(1.0, std::abs(b));
  };
  double worst = 0.0;
  for (int l = 0; l < 5; ++l) {
    for (int a = 0; a < kAugDim; ++a) {
      worst = std::max(worst, rel(got.jacobian(l, a), want.jacobian(l, a)));
      for (int b = 0; b < kAugDim; ++b) {
        worst = std::max(worst,
                         rel(got.hessians[static_cast<size_t>(l)](a, b),
                             want.hessians[static_cast<size_t>(l)](a, b)));
      }
    }
  }
  return worst;
}

double max_abs_err(const DerivativeBundle& a, const DerivativeBundle& b) {
  double worst = (a.jacobian - b.jacobian).cwiseAbs().maxCoeff();
  for (size_t l = 0; l < 5; ++l) {
    worst =
        std::max(worst, (a.hessians[l] - b.hessians[l]).cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace

TEST_CASE("raw derivative spot values") {
  EllipseParams x;
  x.half_lengths = Vec2(2, 1);
  const DerivativeBundle d =
      raw_derivatives(make_augmented(x, Vec2(1, 0), Vec2::Zero()), Vec2::Zero());
  // d g1 / d h1 = l1 cos(alpha) = 2 at alpha = 0
  CHECK(d.jacobian(0, kAugH1) == doctest::Approx(2.0));
  // additive noise enters linearly
  CHECK(d.jacobian(0, kAugV1) == doctest::Approx(1.0));
  CHECK(d.jacobian(1, kAugV2) == doctest::Approx(1.0));
}

TEST_CASE("raw derivatives match central finite differences") {
  Prng rng(derive_stream(13, 1));
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const AugmentedVector gamma = small_random_point(rng);
    const DerivativeBundle analytic = raw_derivatives(gamma, Vec2::Zero());
    const DerivativeBundle fd =
        finite_difference_derivatives(gamma, Vec2::Zero(), 1e-5);
    worst = std::max(worst, max_rel_err(analytic, fd));
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("hessians are symmetric") {
  Prng rng(derive_stream(13, 2));
  for (int i = 0; i < 50; ++i) {
    const DerivativeBundle d =
        raw_derivatives(small_random_point(rng), Vec2::Zero());
    for (const Mat9& h : d.hessians) {
      CHECK((h - h.transpose()).cwiseAbs().maxCoeff() < 1e-12);
    }
    Vec5 shape;
    shape << 0, 0, rng.uniform01() * M_PI, 0.5 + rng.uniform01(),
        0.5 + rng.uniform01();
    const DerivativeBundle s = substituted_derivatives(shape, 0.25);
    for (const Mat9& h : s.hessians) {
      CHECK((h - h.transpose()).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("substituted jacobian fixed rows") {
  Vec5 shape;
  shape << 0, 0, 0, 2, 1;
  const DerivativeBundle d = substituted_derivatives(shape, 0.25);

  // Row of the first squared component at alpha = 0: only the l1 column
  // survives, 2 l1 c cos^2(alpha) = 1.
  Eigen::Matrix<double, 1, 9> want;
  want << 0, 0, 0, 1, 0, 0, 0, 0, 0;
  CHECK((d.jacobian.row(2) - want).cwiseAbs().maxCoeff() < 1e-15);

  // Equal axes kill the orientation sensitivity of the squared components.
  Vec5 round;
  round << 0, 0, M_PI / 4.0, 1, 1;
  const DerivativeBundle r = substituted_derivatives(round, 0.7);
  CHECK(r.jacobian(2, kIdxAlpha) == doctest::Approx(0.0).epsilon(1e-15));

  // The linear rows carry no orientation or length sensitivity.
  for (int row : {0, 1}) {
    for (int col : {kIdxAlpha, kIdxL1, kIdxL2}) {
      CHECK(d.jacobian(row, col) == 0.0);
    }
  }
}

TEST_CASE("substituted derivatives equal the Gauss-Hermite expectation") {
  {
    Vec5 shape;
    shape << 0, 0, M_PI / 6.0, 2, 1;
    const DerivativeBundle impl = substituted_derivatives(shape, 0.25);
    const DerivativeBundle gh = gauss_hermite_expected_derivatives(shape, 0.25);
    CHECK(max_abs_err(impl, gh) < 1e-10);
  }
  Prng rng(derive_stream(13, 3));
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    Vec5 shape;
    shape << rng.uniform_sym(3.0), rng.uniform_sym(3.0),
        rng.uniform01() * M_PI / 2.0, 0.5 + 4.5 * rng.uniform01(),
        0.5 + 4.5 * rng.uniform01();
    const double c = 0.05 + 0.45 * rng.uniform01();
    worst = std::max(worst,
                     max_abs_err(substituted_derivatives(shape, c),
                                 gauss_hermite_expected_derivatives(shape, c)));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("distinct spreads are rejected") {
  Vec5 shape;
  shape << 0, 0, 0.4, 2, 1;
  CHECK_THROWS_AS(substituted_derivatives(shape, 0.25, 0.3), MismatchedSpread);
  CHECK_NOTHROW(substituted_derivatives(shape, 0.25, 0.25));
}

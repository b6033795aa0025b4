#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "soekf/metrics.hpp"
#include "soekf/rng.hpp"

#include <cmath>

using namespace soekf;

namespace {

EllipseParams random_shape(Prng& rng) {
  EllipseParams p;
  p.center = Vec2(rng.uniform_sym(10.0), rng.uniform_sym(10.0));
  p.alpha = rng.uniform_sym(4.0);
  p.half_lengths =
      Vec2(0.2 + 4.0 * rng.uniform01(), 0.2 + 4.0 * rng.uniform01());
  return p;
}

}  // namespace

TEST_CASE("axis endpoints") {
  {
    EllipseParams p;
    p.half_lengths = Vec2(2, 1);
    const ShapePoints pts = axis_endpoints(p);
    CHECK(pts.points[0].isApprox(Vec2(2, 0)));
    CHECK(pts.points[1].isApprox(Vec2(-2, 0)));
    CHECK(pts.points[2].isApprox(Vec2(0, 1)));
    CHECK(pts.points[3].isApprox(Vec2(0, -1)));
  }
  {
    EllipseParams p;
    p.center = Vec2(1, 1);
    const ShapePoints pts = axis_endpoints(p);
    CHECK(pts.points[0].isApprox(Vec2(2, 1)));
    CHECK(pts.points[1].isApprox(Vec2(0, 1)));
    CHECK(pts.points[2].isApprox(Vec2(1, 2)));
    CHECK(pts.points[3].isApprox(Vec2(1, 0)));
  }
  {
    EllipseParams p;
    p.center = Vec2(1000, 1000);
    p.alpha = M_PI / 6.0;
    p.half_lengths = Vec2(2, 1);
    const ShapePoints pts = axis_endpoints(p);
    CHECK(pts.points[0][0] == doctest::Approx(1001.73205080757).epsilon(1e-12));
    CHECK(pts.points[0][1] == doctest::Approx(1001.0).epsilon(1e-12));
    CHECK(pts.points[1][0] == doctest::Approx(998.26794919243).epsilon(1e-12));
    CHECK(pts.points[1][1] == doctest::Approx(999.0).epsilon(1e-12));
    CHECK(pts.points[2][0] == doctest::Approx(999.5).epsilon(1e-12));
    CHECK(pts.points[2][1] == doctest::Approx(1000.86602540378).epsilon(1e-12));
    CHECK(pts.points[3][0] == doctest::Approx(1000.5).epsilon(1e-12));
    CHECK(pts.points[3][1] == doctest::Approx(999.13397459622).epsilon(1e-12));
  }
}

TEST_CASE("axis endpoints centroid equals the center") {
  Prng rng(derive_stream(19, 1));
  for (int i = 0; i < 100; ++i) {
    const EllipseParams p = random_shape(rng);
    const ShapePoints pts = axis_endpoints(p);
    Vec2 centroid = Vec2::Zero();
    for (const Vec2& q : pts.points) centroid += q;
    centroid /= 4.0;
    CHECK((centroid - p.center).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("metric identity, symmetry, shape symmetries") {
  Prng rng(derive_stream(19, 2));
  for (int i = 0; i < 200; ++i) {
    const EllipseParams a = random_shape(rng);
    const EllipseParams b = random_shape(rng);

    CHECK(ospa4(a, a) <= 1e-12);

    EllipseParams rotated = a;
    rotated.alpha += M_PI;
    CHECK(ospa4(a, rotated) <= 1e-12);

    EllipseParams swapped = a;
    swapped.alpha += M_PI / 2.0;
    swapped.half_lengths = Vec2(a.half_lengths[1], a.half_lengths[0]);
    CHECK(ospa4(a, swapped) <= 1e-12);

    const double ab = ospa4(a, b);
    CHECK(ab >= 0.0);
    CHECK(std::abs(ab - ospa4(b, a)) <= 1e-12);
    CHECK(std::abs(ospa4(a, b) - ospa4(swapped, b)) <= 1e-9);
  }
}

TEST_CASE("translated ellipse fixture") {
  EllipseParams a;
  a.half_lengths = Vec2(2, 1);
  EllipseParams b = a;
  b.center = Vec2(1, 0);
  CHECK(ospa4(a, b) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("metric grows with translation beyond the point-set diameter") {
  EllipseParams a;
  a.half_lengths = Vec2(2, 1);
  double prev = 0.0;
  // Diameter of the endpoint set is 4; past that the identity assignment
  // dominates and d grows like t^2.
  for (double t = 5.0; t <= 30.0; t += 1.0) {
    EllipseParams b = a;
    b.center = Vec2(t, 0);
    const double d = ospa4(a, b);
    CHECK(d > prev);
    prev = d;
  }
}

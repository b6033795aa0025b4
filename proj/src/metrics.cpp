#include "soekf/metrics.hpp"

#include <algorithm>
#include <array>

namespace soekf {

ShapePoints axis_endpoints(const EllipseParams& p) {
  const auto [e1, e2] = axis_unit_vectors(p.alpha);
  const Vec2 a1 = p.half_lengths[0] * e1;
  const Vec2 a2 = p.half_lengths[1] * e2;
  return {{{p.center + a1, p.center - a1, p.center + a2, p.center - a2}}};
}

double ospa4(const EllipseParams& a, const EllipseParams& b) {
  const ShapePoints pa = axis_endpoints(a);
  const ShapePoints pb = axis_endpoints(b);

  double cost[4][4];
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      cost[i][j] = (pb.points[i] - pa.points[j]).squaredNorm();
    }
  }

  std::array<int, 4> perm = {0, 1, 2, 3};
  double best = std::numeric_limits<double>::infinity();
  do {
    const double total = cost[0][perm[0]] + cost[1][perm[1]] +
                         cost[2][perm[2]] + cost[3][perm[3]];
    best = std::min(best, total);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return 0.25 * best;
}

}  // namespace soekf

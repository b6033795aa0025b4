#pragma once

#include "soekf/derivatives.hpp"

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace soekf {

// Central finite differences of g_exact; the independent route against which
// raw_derivatives is checked.
DerivativeBundle finite_difference_derivatives(const AugmentedVector& gamma,
                                               const Vec2& m_hat,
                                               double step = 1e-5);

// Tensor 3-node Gauss-Hermite expectation of raw_derivatives over
// h ~ N(0, diag(c, c)) at the centered state mean with v = 0. Exact for the
// degree <= 2 polynomials in h that populate these matrices, so it must match
// substituted_derivatives to roundoff.
DerivativeBundle gauss_hermite_expected_derivatives(const Vec5& shape_mean,
                                                    double c);

struct SelftestOptions {
  int fd_points = 30;
  int gh_cases = 20;
  std::int64_t oracle_samples = 20000;  // per batch; 8 batches are averaged
  std::uint64_t seed = 0x5eed'50ef'0001ull;
  // Mutation fixture: negates one Jacobian entry on the implementation side
  // before comparing, to prove the gates catch a real defect.
  bool inject_jacobian_flip = false;
};

struct SelftestReport {
  struct Entry {
    std::string name;
    bool pass = false;
    double worst = 0.0;
    std::string detail;
  };
  std::vector<Entry> entries;
  bool all_pass() const;
};

SelftestReport run_selftest(const SelftestOptions& opts);
void print_report(const SelftestReport& report, std::ostream& os);

}  // namespace soekf

#include "soekf/selftest.hpp"

#include "soekf/filter.hpp"
#include "soekf/mc_oracle.hpp"
#include "soekf/rng.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

namespace soekf {

DerivativeBundle finite_difference_derivatives(const AugmentedVector& gamma,
                                               const Vec2& m_hat,
                                               double step) {
  DerivativeBundle out;
  for (int a = 0; a < kAugDim; ++a) {
    AugmentedVector plus = gamma, minus = gamma;
    plus[a] += step;
    minus[a] -= step;
    out.jacobian.col(a) =
        (g_exact(plus, m_hat) - g_exact(minus, m_hat)) / (2.0 * step);
  }
  for (auto& h : out.hessians) h.setZero();
  for (int a = 0; a < kAugDim; ++a) {
    for (int b = a; b < kAugDim; ++b) {
      AugmentedVector pp = gamma, pm = gamma, mp = gamma, mm = gamma;
      pp[a] += step;
      pp[b] += step;
      pm[a] += step;
      pm[b] -= step;
      mp[a] -= step;
      mp[b] += step;
      mm[a] -= step;
      mm[b] -= step;
      const Vec5 second = (g_exact(pp, m_hat) - g_exact(pm, m_hat) -
                           g_exact(mp, m_hat) + g_exact(mm, m_hat)) /
                          (4.0 * step * step);
      for (int l = 0; l < 5; ++l) {
        out.hessians[static_cast<size_t>(l)](a, b) = second[l];
        out.hessians[static_cast<size_t>(l)](b, a) = second[l];
      }
    }
  }
  return out;
}

DerivativeBundle gauss_hermite_expected_derivatives(const Vec5& shape_mean,
                                                    double c) {
  // 3-node rule for the standard normal: nodes +-sqrt(3), 0 with weights
  // 1/6, 1/6, 2/3; exact through degree 5.
  const double node = std::sqrt(3.0);
  const double xs[3] = {-node, 0.0, node};
  const double ws[3] = {1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0};
  const double scale = std::sqrt(c);
  const Vec2 m_hat = shape_mean.head<2>();

  DerivativeBundle sum;
  sum.jacobian.setZero();
  for (auto& h : sum.hessians) h.setZero();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      AugmentedVector gamma = AugmentedVector::Zero();
      gamma.head<kShapeDim>() = shape_mean;
      gamma[kAugH1] = scale * xs[i];
      gamma[kAugH2] = scale * xs[j];
      const DerivativeBundle at_node = raw_derivatives(gamma, m_hat);
      const double w = ws[i] * ws[j];
      sum.jacobian += w * at_node.jacobian;
      for (int l = 0; l < 5; ++l) {
        sum.hessians[static_cast<size_t>(l)] +=
            w * at_node.hessians[static_cast<size_t>(l)];
      }
    }
  }
  return sum;
}

namespace {

std::string format_sci(double v) {
  std::ostringstream ss;
  ss << std::setprecision(3) << std::scientific << v;
  return ss.str();
}

double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}

double bundle_rel_err(const DerivativeBundle& impl,
                      const DerivativeBundle& oracle) {
  double worst = 0.0;
  for (int l = 0; l < 5; ++l) {
    for (int a = 0; a < kAugDim; ++a) {
      worst = std::max(worst, rel_err(impl.jacobian(l, a),
                                      oracle.jacobian(l, a)));
      for (int b = 0; b < kAugDim; ++b) {
        worst = std::max(
            worst, rel_err(impl.hessians[static_cast<size_t>(l)](a, b),
                           oracle.hessians[static_cast<size_t>(l)](a, b)));
      }
    }
  }
  return worst;
}

double bundle_abs_err(const DerivativeBundle& lhs,
                      const DerivativeBundle& rhs) {
  double worst = (lhs.jacobian - rhs.jacobian).cwiseAbs().maxCoeff();
  for (size_t l = 0; l < 5; ++l) {
    worst = std::max(worst,
                     (lhs.hessians[l] - rhs.hessians[l]).cwiseAbs().maxCoeff());
  }
  return worst;
}

// Keep |g| modest so the 1/step^2 amplification of evaluation roundoff in the
// Hessian differences stays below the 1e-6 gate.
AugmentedVector random_fd_point(Prng& rng) {
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

SelftestReport::Entry check_finite_differences(const SelftestOptions& opts) {
  SelftestReport::Entry entry{"jacobian/hessians vs central differences",
                              false, 0.0, ""};
  Prng rng(derive_stream(opts.seed, 11));
  double worst = 0.0;
  for (int i = 0; i < opts.fd_points; ++i) {
    const AugmentedVector gamma = random_fd_point(rng);
    const Vec2 m_hat = Vec2::Zero();
    DerivativeBundle impl = raw_derivatives(gamma, m_hat);
    if (opts.inject_jacobian_flip) impl.jacobian(2, 3) = -impl.jacobian(2, 3);
    const DerivativeBundle fd =
        finite_difference_derivatives(gamma, m_hat, 1e-5);
    worst = std::max(worst, bundle_rel_err(impl, fd));
  }
  entry.worst = worst;
  entry.pass = worst < 1e-6;
  entry.detail = "max rel err " + format_sci(worst) + " (gate 1e-06)";
  return entry;
}

SelftestReport::Entry check_gauss_hermite(const SelftestOptions& opts) {
  SelftestReport::Entry entry{"substituted derivatives vs Gauss-Hermite",
                              false, 0.0, ""};
  Prng rng(derive_stream(opts.seed, 12));
  double worst = 0.0;
  for (int i = 0; i < opts.gh_cases; ++i) {
    Vec5 shape;
    shape << rng.uniform_sym(2.0), rng.uniform_sym(2.0),
        rng.uniform01() * M_PI / 2.0, 0.5 + 4.5 * rng.uniform01(),
        0.5 + 4.5 * rng.uniform01();
    const double c = 0.05 + 0.45 * rng.uniform01();
    DerivativeBundle impl = substituted_derivatives(shape, c);
    if (opts.inject_jacobian_flip) impl.jacobian(2, 3) = -impl.jacobian(2, 3);
    const DerivativeBundle gh = gauss_hermite_expected_derivatives(shape, c);
    worst = std::max(worst, bundle_abs_err(impl, gh));
  }
  entry.worst = worst;
  entry.pass = worst < 1e-10;
  entry.detail = "max abs err " + format_sci(worst) + " (gate 1e-10)";
  return entry;
}

// Entries are gated at max(4 standard errors, a fraction of the natural
// scale): the noise term dominates at small sample counts, the scale floor
// absorbs the known second-order truncation at the diffuse reference prior
// (about 1% on the linear covariance block, a few percent on the quadratic
// one), so raising --n keeps the check green while still catching real
// defects, which shift entries by order one.
SelftestReport::Entry check_moment_oracle(const SelftestOptions& opts) {
  SelftestReport::Entry entry{"predicted moments vs sampling oracle", false,
                              0.0, ""};
  const double c = 0.25;
  const Mat2 q_levels[2] = {Mat2::Identity(), 4.0 * Mat2::Identity()};

  double worst_margin = 0.0;  // |diff| / allowance, over all entries
  constexpr int kBatches = 8;
  for (int p = 0; p < 2; ++p) {
    EllipseParams shape;
    shape.center = Vec2(1000.0, 1000.0);
    shape.alpha = M_PI / 6.0;
    shape.half_lengths = Vec2(2.0, 1.0);
    Eigen::VectorXd var(5);
    var << 9.0, 9.0, 1.0 / 9.0, 1.0, 1.0;
    const StateEstimate est = make_state(shape, var.asDiagonal());
    const Mat2 q = q_levels[p];

    const PredictedMoments predicted = predict_moments(est, q, c);

    std::vector<PredictedMoments> batches;
    for (int b = 0; b < kBatches; ++b) {
      OracleConfig oracle;
      oracle.sample_count = opts.oracle_samples;
      oracle.seed = derive_stream(opts.seed, 13, static_cast<std::uint64_t>(p),
                                  static_cast<std::uint64_t>(b));
      batches.push_back(sample_moments(est, q, c, c, oracle));
    }

    const auto compare = [&](auto getter, double scale, double frac) {
      double mean = 0.0;
      for (const auto& b : batches) mean += getter(b);
      mean /= kBatches;
      double sq = 0.0;
      for (const auto& b : batches) {
        const double d = getter(b) - mean;
        sq += d * d;
      }
      const double se = std::sqrt(sq / (kBatches - 1.0) / kBatches);
      const double allowance = std::max(4.0 * se, frac * scale) + 1e-12;
      const double margin = std::abs(getter(predicted) - mean) / allowance;
      worst_margin = std::max(worst_margin, margin);
    };

    const Mat5& s = predicted.innovation_cov;
    for (int l = 0; l < 5; ++l) {
      const double frac = l < 2 ? 0.015 : 0.10;
      compare([l](const PredictedMoments& m) { return m.z_hat[l]; },
              std::sqrt(s(l, l)), frac);
      for (int r = l; r < 5; ++r) {
        compare(
            [l, r](const PredictedMoments& m) { return m.innovation_cov(l, r); },
            std::sqrt(s(l, l) * s(r, r)), l < 2 ? 0.015 : 0.10);
      }
    }
  }

  entry.worst = worst_margin;
  entry.pass = worst_margin < 1.0;
  entry.detail =
      "worst entry at " + format_sci(worst_margin) +
      " of its allowance (max of 4 SE and the truncation floor)";
  return entry;
}

}  // namespace

bool SelftestReport::all_pass() const {
  for (const Entry& e : entries) {
    if (!e.pass) return false;
  }
  return !entries.empty();
}

SelftestReport run_selftest(const SelftestOptions& opts) {
  SelftestReport report;
  report.entries.push_back(check_finite_differences(opts));
  report.entries.push_back(check_gauss_hermite(opts));
  report.entries.push_back(check_moment_oracle(opts));
  return report;
}

void print_report(const SelftestReport& report, std::ostream& os) {
  for (const auto& e : report.entries) {
    os << (e.pass ? "PASS" : "FAIL") << "  " << e.name << ": " << e.detail
       << "\n";
  }
}

}  // namespace soekf

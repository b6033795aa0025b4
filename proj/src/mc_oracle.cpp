#include "soekf/mc_oracle.hpp"

#include "soekf/errors.hpp"
#include "soekf/parallel.hpp"
#include "soekf/rng.hpp"

#include <cmath>
#include <vector>

namespace soekf {

namespace {

// Fixed reduction granularity: per-block partial sums are combined in block
// order, so the result is bitwise independent of the thread count.
constexpr std::int64_t kBlockSize = 1 << 16;

struct BlockSums {
  Vec5 z = Vec5::Zero();
  Mat5 zz = Mat5::Zero();
  Eigen::MatrixXd xz;  // deviations x - mean vs z
  Eigen::VectorXd x;   // deviations x - mean
};

}  // namespace

PredictedMoments sample_moments(const StateEstimate& est, const Mat2& Q,
                                double c1, double c2,
                                const OracleConfig& cfg) {
  if (cfg.sample_count < 1000) {
    throw std::invalid_argument(
        "oracle sample count below 1000 makes standard-error gates "
        "meaningless");
  }
  const int n = est.dim();
  const std::int64_t count = cfg.sample_count;
  const Eigen::MatrixXd state_sqrt = psd_sqrt(est.cov);
  const Eigen::MatrixXd meas_sqrt = psd_sqrt(Q);
  const Vec2 m_hat = est.center();
  const double h1_scale =
      cfg.h_family == HFamily::kGaussian ? std::sqrt(c1) : std::sqrt(3.0 * c1);
  const double h2_scale =
      cfg.h_family == HFamily::kGaussian ? std::sqrt(c2) : std::sqrt(3.0 * c2);

  const std::int64_t blocks = (count + kBlockSize - 1) / kBlockSize;
  std::vector<BlockSums> partial(static_cast<size_t>(blocks));

  parallel_for(blocks, [&](std::int64_t b) {
    BlockSums sums;
    sums.xz = Eigen::MatrixXd::Zero(n, 5);
    sums.x = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd xi(n);
    AugmentedVector gamma;
    const std::int64_t lo = b * kBlockSize;
    const std::int64_t hi = std::min(count, lo + kBlockSize);
    for (std::int64_t i = lo; i < hi; ++i) {
      Prng rng(derive_stream(cfg.seed, static_cast<std::uint64_t>(i)));
      for (int k = 0; k < n; ++k) xi[k] = rng.normal();
      const Eigen::VectorXd dx = state_sqrt * xi;
      double h1, h2;
      if (cfg.h_family == HFamily::kGaussian) {
        h1 = h1_scale * rng.normal();
        h2 = h2_scale * rng.normal();
      } else {
        h1 = rng.uniform_sym(h1_scale);
        h2 = rng.uniform_sym(h2_scale);
      }
      const Vec2 v = meas_sqrt * Vec2(rng.normal(), rng.normal());
      gamma.head<kShapeDim>() =
          est.mean.head<kShapeDim>() + dx.head<kShapeDim>();
      gamma[kAugH1] = h1;
      gamma[kAugH2] = h2;
      gamma.segment<2>(kAugV1) = v;
      const Vec5 z = g_exact(gamma, m_hat);
      sums.z += z;
      sums.zz += z * z.transpose();
      sums.xz += dx * z.transpose();
      sums.x += dx;
    }
    partial[static_cast<size_t>(b)] = std::move(sums);
  });

  BlockSums total;
  total.xz = Eigen::MatrixXd::Zero(n, 5);
  total.x = Eigen::VectorXd::Zero(n);
  for (const BlockSums& p : partial) {
    total.z += p.z;
    total.zz += p.zz;
    total.xz += p.xz;
    total.x += p.x;
  }

  const double nd = static_cast<double>(count);
  const Vec5 mean_z = total.z / nd;
  const Eigen::VectorXd mean_dx = total.x / nd;
  const double denom = nd - 1.0;

  PredictedMoments pm;
  pm.z_hat = mean_z;
  Mat5 s = (total.zz - nd * mean_z * mean_z.transpose()) / denom;
  pm.innovation_cov = 0.5 * (s + s.transpose());
  pm.state_meas_cross =
      (total.xz - nd * mean_dx * mean_z.transpose()) / denom;
  return pm;
}

StateEstimate mc_measurement_update(const StateEstimate& est, const Vec2& y,
                                    const Mat2& Q, double c1, double c2,
                                    const OracleConfig& cfg,
                                    const UpdateOptions& opts) {
  const PredictedMoments pm = sample_moments(est, Q, c1, c2, cfg);
  return apply_pseudo_update(est, pseudo_measurement(y, est.center()), pm,
                             opts);
}

}  // namespace soekf

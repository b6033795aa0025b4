#include "soekf/simulation.hpp"

#include "soekf/errors.hpp"
#include "soekf/metrics.hpp"
#include "soekf/parallel.hpp"
#include "soekf/process_models.hpp"

#include <cmath>

namespace soekf {

namespace {

// Stream tags keeping the per-purpose substreams apart.
constexpr std::uint64_t kTagPrior = 1;
constexpr std::uint64_t kTagFrame = 2;
constexpr std::uint64_t kTagOracle = 3;

constexpr double kDivergenceGate = 1e6;  // [m^2]

Vec2 draw_h(const NoiseConfig& noise, Prng& rng) {
  if (noise.h_family == HFamily::kGaussian) {
    return Vec2(std::sqrt(noise.c1) * rng.normal(),
                std::sqrt(noise.c2) * rng.normal());
  }
  return Vec2(rng.uniform_sym(std::sqrt(3.0 * noise.c1)),
              rng.uniform_sym(std::sqrt(3.0 * noise.c2)));
}

RunResult execute_run(const ScenarioConfig& cfg, EstimatorKind estimator,
                      std::int64_t oracle_n, int run) {
  RunResult result;
  result.run_index = run;
  result.estimator = estimator;

  StateEstimate est = cfg.prior;
  if (cfg.randomize_prior_mean) {
    const Eigen::MatrixXd prior_sqrt = psd_sqrt(cfg.prior.cov);
    Prng rng(derive_stream(cfg.seed, kTagPrior, static_cast<std::uint64_t>(run)));
    Eigen::VectorXd xi(est.dim());
    for (int i = 0; i < xi.size(); ++i) xi[i] = rng.normal();
    est.mean += prior_sqrt * xi;
  }

  const double c = estimator == EstimatorKind::kSoekf
                       ? equal_spread(cfg.noise)
                       : 0.0;  // unused by the oracle path
  UpdateOptions opts;
  opts.clamp_events = &result.length_clamp_events;

  if (cfg.steps == 0) {
    result.trajectory.push_back(
        {0, est, ospa4(est.shape(), cfg.ground_truth.at(0).shape)});
    return result;
  }

  bool dead = false;  // non-finite state; freeze the estimate, keep recording
  for (int step = 1; step <= cfg.steps; ++step) {
    const GroundTruthState& truth =
        cfg.ground_truth.at(static_cast<size_t>(step));
    Prng frame_rng(derive_stream(cfg.seed, kTagFrame,
                                 static_cast<std::uint64_t>(run),
                                 static_cast<std::uint64_t>(step)));
    const MeasurementFrame frame =
        synthesize_frame(truth.shape, cfg.noise, cfg.count_law, frame_rng,
                         step);

    if (!dead) {
      if (cfg.process) est = time_update(est, *cfg.process);
      if (estimator == EstimatorKind::kSoekf) {
        est = batch_update(est, frame, cfg.noise.meas_cov, c, opts);
      } else {
        OracleConfig oracle;
        oracle.sample_count = oracle_n;
        oracle.h_family = cfg.noise.h_family;
        for (size_t i = 0; i < frame.points.size(); ++i) {
          oracle.seed = derive_stream(
              derive_stream(cfg.seed, kTagOracle,
                            static_cast<std::uint64_t>(run),
                            static_cast<std::uint64_t>(step)),
              static_cast<std::uint64_t>(i));
          est = mc_measurement_update(est, frame.points[i],
                                      cfg.noise.meas_cov, cfg.noise.c1,
                                      cfg.noise.c2, oracle, opts);
        }
      }
      if (!est.mean.allFinite() || !est.cov.allFinite()) {
        result.diverged = true;
        dead = true;
      }
    }

    const double d = ospa4(est.shape(), truth.shape);
    if (!(d <= kDivergenceGate)) result.diverged = true;
    result.trajectory.push_back({step, est, d});
  }
  return result;
}

}  // namespace

ScenarioConfig static_ellipse_scenario(NoiseLevel level, int runs,
                                       std::uint64_t seed) {
  ScenarioConfig cfg;
  cfg.kind = ScenarioKind::kStaticEllipse;
  cfg.steps = 100;
  cfg.runs = runs;
  cfg.seed = seed;
  cfg.count_law = {MeasurementCountLaw::Kind::kFixed, 1.0};

  EllipseParams truth;
  truth.center = Vec2(1000.0, 1000.0);
  truth.alpha = M_PI / 6.0;
  truth.half_lengths = Vec2(2.0, 1.0);
  cfg.ground_truth.assign(static_cast<size_t>(cfg.steps) + 1, {truth, Vec2::Zero()});

  cfg.noise.c1 = 0.25;
  cfg.noise.c2 = 0.25;
  cfg.noise.h_family = HFamily::kGaussian;
  switch (level) {
    case NoiseLevel::kNone:
      cfg.noise.meas_cov = Mat2::Zero();
      break;
    case NoiseLevel::kMedium:
      cfg.noise.meas_cov = Mat2::Identity();
      break;
    case NoiseLevel::kHigh:
      cfg.noise.meas_cov = 4.0 * Mat2::Identity();
      break;
  }

  Eigen::VectorXd prior_var(5);
  prior_var << 9.0, 9.0, 1.0 / 9.0, 1.0, 1.0;
  cfg.prior = make_state(truth, prior_var.asDiagonal());
  cfg.randomize_prior_mean = true;
  return cfg;
}

ScenarioConfig rectangle_ncv_scenario(int runs, std::uint64_t seed,
                                      int total_steps) {
  ScenarioConfig cfg;
  cfg.kind = ScenarioKind::kRectangleNcv;
  cfg.steps = total_steps;
  cfg.runs = runs;
  cfg.seed = seed;
  cfg.count_law = {MeasurementCountLaw::Kind::kPoisson, 7.0};

  // Along x for 30 steps, diagonal for the middle segment, along x for the
  // last 40; the middle absorbs whatever the horizon leaves over.
  const auto segment_velocity = [total_steps](int k) {
    const int middle = std::max(0, total_steps - 70);
    if (k < 30 || k >= 30 + middle) return Vec2(1.5, 0.0);
    return Vec2(1.5, 1.5);
  };

  cfg.ground_truth.resize(static_cast<size_t>(total_steps) + 1);
  Vec2 pos = Vec2::Zero();
  for (int k = 0; k <= total_steps; ++k) {
    GroundTruthState& gt = cfg.ground_truth[static_cast<size_t>(k)];
    const Vec2 incoming = k == 0 ? segment_velocity(0) : segment_velocity(k - 1);
    gt.shape.center = pos;
    gt.shape.alpha = std::atan2(incoming[1], incoming[0]);
    gt.shape.half_lengths = Vec2(1.0, 2.0);
    gt.velocity = segment_velocity(k);
    pos += gt.velocity;
  }

  cfg.noise.c1 = 1.0 / 3.0;
  cfg.noise.c2 = 1.0 / 3.0;
  cfg.noise.h_family = HFamily::kUniform;
  cfg.noise.meas_cov = (1.0 / 3.0) * Mat2::Identity();

  EllipseParams prior_shape;
  prior_shape.center = Vec2(0.6, 0.6);
  prior_shape.alpha = M_PI / 3.0;
  prior_shape.half_lengths = Vec2(1.5, 2.5);
  Eigen::VectorXd prior_var(7);
  prior_var << 0.5, 0.5, 0.76, 0.2, 0.2, 1.0, 1.0;
  cfg.prior = make_state(prior_shape, Vec2(1.0, 0.0), prior_var.asDiagonal());
  cfg.process = make_ncv_model();
  cfg.randomize_prior_mean = false;
  return cfg;
}

MeasurementFrame synthesize_frame(const EllipseParams& gt,
                                  const NoiseConfig& noise,
                                  const MeasurementCountLaw& law, Prng& rng,
                                  int time_index) {
  MeasurementFrame frame;
  frame.time_index = time_index;
  const int count = law.kind == MeasurementCountLaw::Kind::kFixed
                        ? static_cast<int>(law.value)
                        : rng.poisson(law.value);
  const Mat2 meas_sqrt = psd_sqrt(noise.meas_cov);
  frame.points.reserve(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) {
    const Vec2 h = draw_h(noise, rng);
    const Vec2 v = meas_sqrt * Vec2(rng.normal(), rng.normal());
    frame.points.push_back(measurement_source(gt, h) + v);
  }
  return frame;
}

std::vector<RunResult> run_experiment(const ScenarioConfig& cfg,
                                      EstimatorKind estimator,
                                      std::int64_t oracle_n) {
  if (cfg.runs < 1) throw std::invalid_argument("runs must be >= 1");
  if (cfg.ground_truth.size() < static_cast<size_t>(cfg.steps) + 1) {
    throw DimensionMismatch("ground truth shorter than the horizon");
  }
  if (estimator == EstimatorKind::kSoekf) {
    equal_spread(cfg.noise);  // reject mismatched spreads up front
  }

  std::vector<RunResult> results(static_cast<size_t>(cfg.runs));
  parallel_for(cfg.runs, [&](std::int64_t run) {
    results[static_cast<size_t>(run)] =
        execute_run(cfg, estimator, oracle_n, static_cast<int>(run));
  });
  return results;
}

std::vector<SummaryRow> summarize(const std::vector<RunResult>& results) {
  std::vector<SummaryRow> rows;
  if (results.empty()) return rows;
  const size_t steps = results.front().trajectory.size();
  const double runs = static_cast<double>(results.size());
  rows.resize(steps);
  for (size_t s = 0; s < steps; ++s) {
    double sum = 0.0;
    for (const RunResult& r : results) sum += r.trajectory.at(s).metric;
    const double mean = sum / runs;
    double sq = 0.0;
    for (const RunResult& r : results) {
      const double dev = r.trajectory.at(s).metric - mean;
      sq += dev * dev;
    }
    rows[s].step = results.front().trajectory.at(s).step;
    rows[s].mean_d = mean;
    rows[s].std_d = results.size() > 1 ? std::sqrt(sq / (runs - 1.0)) : 0.0;
  }
  return rows;
}

}  // namespace soekf

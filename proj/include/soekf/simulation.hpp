#pragma once

#include "soekf/filter.hpp"
#include "soekf/mc_oracle.hpp"
#include "soekf/rng.hpp"

#include <optional>
#include <vector>

namespace soekf {

enum class ScenarioKind { kStaticEllipse, kRectangleNcv };
enum class NoiseLevel { kNone, kMedium, kHigh };
enum class EstimatorKind { kSoekf, kMc };

struct GroundTruthState {
  EllipseParams shape;
  Vec2 velocity = Vec2::Zero();  // [m / step]
};

struct MeasurementCountLaw {
  enum class Kind { kFixed, kPoisson } kind = Kind::kFixed;
  double value = 1.0;  // fixed count or Poisson mean
};

struct ScenarioConfig {
  ScenarioKind kind = ScenarioKind::kStaticEllipse;
  // ground_truth[k] is the truth at step k; index 0 is the prior time.
  std::vector<GroundTruthState> ground_truth;
  MeasurementCountLaw count_law;
  NoiseConfig noise;
  StateEstimate prior;
  std::optional<ProcessModel> process;  // absent for static scenarios
  // Draw each run's prior mean from N(prior.mean, prior.cov); the paper's
  // static experiment gives only the prior covariance.
  bool randomize_prior_mean = false;
  int steps = 100;
  int runs = 1;
  std::uint64_t seed = 0;
};

struct StepRecord {
  int step = 0;
  StateEstimate estimate;
  double metric = 0.0;  // d against ground truth [m^2]
};

struct RunResult {
  int run_index = 0;
  EstimatorKind estimator = EstimatorKind::kSoekf;
  // One record per step 1..steps; a single step-0 record when steps == 0.
  std::vector<StepRecord> trajectory;
  bool diverged = false;
  int length_clamp_events = 0;
};

struct SummaryRow {
  int step = 0;
  double mean_d = 0.0;
  double std_d = 0.0;
};

// Stationary ellipse at [1000, 1000], alpha = pi/6, l = [2, 1]; Gaussian h
// with spread 1/4; one measurement per step for 100 steps; Q per noise level.
ScenarioConfig static_ellipse_scenario(NoiseLevel level, int runs,
                                       std::uint64_t seed);

// Rectangle (l = [1, 2]) under an NCV model: along x for 30 steps, diagonal
// for the middle segment, along x for the last 40; Poisson(7) measurements;
// uniform h with spread 1/3; Q = I/3.
ScenarioConfig rectangle_ncv_scenario(int runs, std::uint64_t seed,
                                      int total_steps = 100);

// Draws one frame: count per law, h per family, v ~ N(0, Q).
MeasurementFrame synthesize_frame(const EllipseParams& gt,
                                  const NoiseConfig& noise,
                                  const MeasurementCountLaw& law, Prng& rng,
                                  int time_index = 0);

// Executes all runs (parallel across runs, deterministic per run index).
// oracle_n is the per-update sample count for the MC estimator.
std::vector<RunResult> run_experiment(const ScenarioConfig& cfg,
                                      EstimatorKind estimator,
                                      std::int64_t oracle_n = 10000);

// Mean/std of d over runs per step (sample std; zero for a single run).
std::vector<SummaryRow> summarize(const std::vector<RunResult>& results);

}  // namespace soekf

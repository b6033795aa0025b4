#include "CLI11.hpp"

#include "soekf/csv_io.hpp"
#include "soekf/errors.hpp"
#include "soekf/metrics.hpp"
#include "soekf/process_models.hpp"
#include "soekf/selftest.hpp"
#include "soekf/simulation.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <set>
#include <string>

namespace fs = std::filesystem;
using namespace soekf;

namespace {

constexpr int kExitConfigError = 2;
constexpr int kExitDiverged = 3;

struct RunOptions {
  std::string scenario = "static";
  std::string noise = "medium";
  std::string estimator = "soekf";
  int runs = 1;
  int steps = 100;
  std::string seed_text;  // required: no wall-clock fallback
  std::int64_t oracle_n = 10000;
  std::string out_dir = ".";
  int trajectories = 1;
  bool sqrt_metric = false;
  bool strict = false;
  NcvParams ncv;
};

const std::set<std::string> kConfigKeys = {
    "scenario",   "noise",     "estimator",    "runs",      "steps",
    "seed",       "oracle-n",  "out",          "trajectories",
    "sqrt-metric", "strict",   "sigma-pos",    "sigma-alpha",
    "sigma-len",  "sigma-vel",
};

bool parse_bool(const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ParseError("expected a boolean, got '" + v + "'");
}

// Config-file values become the defaults; command-line flags override.
void apply_config(const KeyValueMap& kv, RunOptions& opts) {
  for (const auto& [key, value] : kv) {
    if (kConfigKeys.find(key) == kConfigKeys.end()) {
      throw ParseError("unknown config key '" + key + "'");
    }
    if (key == "scenario") opts.scenario = value;
    else if (key == "noise") opts.noise = value;
    else if (key == "estimator") opts.estimator = value;
    else if (key == "runs") opts.runs = std::stoi(value);
    else if (key == "steps") opts.steps = std::stoi(value);
    else if (key == "seed") opts.seed_text = value;
    else if (key == "oracle-n") opts.oracle_n = std::stoll(value);
    else if (key == "out") opts.out_dir = value;
    else if (key == "trajectories") opts.trajectories = std::stoi(value);
    else if (key == "sqrt-metric") opts.sqrt_metric = parse_bool(value);
    else if (key == "strict") opts.strict = parse_bool(value);
    else if (key == "sigma-pos") opts.ncv.sigma_pos = std::stod(value);
    else if (key == "sigma-alpha") opts.ncv.sigma_alpha = std::stod(value);
    else if (key == "sigma-len") opts.ncv.sigma_len = std::stod(value);
    else if (key == "sigma-vel") opts.ncv.sigma_vel = std::stod(value);
  }
}

// Everything that defines the experiment; the output directory is
// deliberately left out so the file is relocatable and run-independent.
KeyValueMap resolved_config(const RunOptions& opts) {
  KeyValueMap kv;
  kv["scenario"] = opts.scenario;
  kv["noise"] = opts.noise;
  kv["estimator"] = opts.estimator;
  kv["runs"] = std::to_string(opts.runs);
  kv["steps"] = std::to_string(opts.steps);
  kv["seed"] = opts.seed_text;
  kv["oracle-n"] = std::to_string(opts.oracle_n);
  kv["trajectories"] = std::to_string(opts.trajectories);
  kv["sqrt-metric"] = opts.sqrt_metric ? "true" : "false";
  kv["strict"] = opts.strict ? "true" : "false";
  kv["sigma-pos"] = format_g9(opts.ncv.sigma_pos);
  kv["sigma-alpha"] = format_g9(opts.ncv.sigma_alpha);
  kv["sigma-len"] = format_g9(opts.ncv.sigma_len);
  kv["sigma-vel"] = format_g9(opts.ncv.sigma_vel);
  return kv;
}

int cmd_run(const RunOptions& opts) {
  if (opts.seed_text.empty()) {
    std::cerr << "error: --seed is required (reproducibility has no "
                 "wall-clock default)\n";
    return kExitConfigError;
  }
  std::uint64_t seed = 0;
  try {
    size_t used = 0;
    seed = std::stoull(opts.seed_text, &used);
    if (used != opts.seed_text.size()) throw std::invalid_argument("trail");
  } catch (const std::exception&) {
    std::cerr << "error: bad seed '" << opts.seed_text << "'\n";
    return kExitConfigError;
  }
  if (opts.runs < 1 || opts.steps < 0 || opts.trajectories < 0) {
    std::cerr << "error: runs must be >= 1, steps and trajectories >= 0\n";
    return kExitConfigError;
  }

  ScenarioConfig cfg;
  if (opts.scenario == "static") {
    NoiseLevel level;
    if (opts.noise == "none") level = NoiseLevel::kNone;
    else if (opts.noise == "medium") level = NoiseLevel::kMedium;
    else if (opts.noise == "high") level = NoiseLevel::kHigh;
    else {
      std::cerr << "error: unknown noise level '" << opts.noise << "'\n";
      return kExitConfigError;
    }
    cfg = static_ellipse_scenario(level, opts.runs, seed);
    cfg.steps = opts.steps;
    cfg.ground_truth.assign(static_cast<size_t>(opts.steps) + 1,
                            cfg.ground_truth.front());
  } else if (opts.scenario == "ncv") {
    cfg = rectangle_ncv_scenario(opts.runs, seed, opts.steps);
    cfg.process = make_ncv_model(opts.ncv);
  } else {
    std::cerr << "error: unknown scenario '" << opts.scenario << "'\n";
    return kExitConfigError;
  }

  EstimatorKind estimator;
  if (opts.estimator == "soekf") estimator = EstimatorKind::kSoekf;
  else if (opts.estimator == "mc") estimator = EstimatorKind::kMc;
  else {
    std::cerr << "error: unknown estimator '" << opts.estimator << "'\n";
    return kExitConfigError;
  }

  std::vector<RunResult> results = run_experiment(cfg, estimator, opts.oracle_n);
  if (opts.sqrt_metric) {
    for (RunResult& r : results) {
      for (StepRecord& rec : r.trajectory) rec.metric = std::sqrt(rec.metric);
    }
  }

  fs::create_directories(opts.out_dir);
  const auto path = [&](const std::string& name) {
    return (fs::path(opts.out_dir) / name).string();
  };

  write_file(path("metrics_" + opts.estimator + "_" + opts.scenario + ".csv"),
             metrics_csv(results));
  write_file(path("summary.csv"), summary_csv(summarize(results)));
  write_file(path("trajectory_gt.csv"),
             trajectory_csv(ground_truth_trajectory(cfg)));
  const int dumped = std::min<int>(opts.trajectories, opts.runs);
  for (int k = 0; k < dumped; ++k) {
    write_file(path("trajectory_run" + std::to_string(k) + ".csv"),
               trajectory_csv(estimate_trajectory(results[static_cast<size_t>(k)])));
  }
  write_file(path("resolved.cfg"), serialize_config_text(resolved_config(opts)));

  int diverged = 0;
  for (const RunResult& r : results) diverged += r.diverged ? 1 : 0;
  if (diverged > 0) {
    std::cerr << diverged << " of " << results.size()
              << " runs flagged as diverged\n";
    if (opts.strict) return kExitDiverged;
  }
  return 0;
}

int cmd_metric(const std::string& file_a, const std::string& file_b,
               bool sqrt_metric) {
  try {
    const auto rows_a = parse_trajectory_csv(read_file(file_a));
    const auto rows_b = parse_trajectory_csv(read_file(file_b));
    if (rows_a.empty() || rows_a.size() != rows_b.size()) {
      std::cerr << "error: step counts differ or files are empty ("
                << rows_a.size() << " vs " << rows_b.size() << ")\n";
      return kExitConfigError;
    }
    std::string out = "step,d\n";
    double sum = 0.0;
    for (size_t i = 0; i < rows_a.size(); ++i) {
      if (rows_a[i].step != rows_b[i].step) {
        std::cerr << "error: step misalignment at row " << i << "\n";
        return kExitConfigError;
      }
      double d = ospa4(rows_a[i].shape, rows_b[i].shape);
      if (sqrt_metric) d = std::sqrt(d);
      sum += d;
      out += std::to_string(rows_a[i].step) + ',' + format_g9(d) + '\n';
    }
    out += "mean," + format_g9(sum / static_cast<double>(rows_a.size())) + '\n';
    std::fputs(out.c_str(), stdout);
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
}

int cmd_selftest(const SelftestOptions& opts) {
  const SelftestReport report = run_selftest(opts);
  print_report(report, std::cout);
  return report.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Elliptic extended-object tracking benchmark"};
  app.require_subcommand(1);

  RunOptions run_opts;
  std::string config_path;
  CLI::App* run = app.add_subcommand(
      "run", "Run a scenario and write CSV metrics/trajectories");
  run->add_option("--config", config_path,
                  "Key-value config file; flags override its entries");
  run->add_option("--scenario", run_opts.scenario, "static | ncv");
  run->add_option("--noise", run_opts.noise,
                  "static scenario level: none | medium | high");
  run->add_option("--estimator", run_opts.estimator, "soekf | mc");
  run->add_option("--runs", run_opts.runs, "Monte Carlo runs");
  run->add_option("--steps", run_opts.steps, "time steps (0 = prior only)");
  run->add_option("--seed", run_opts.seed_text, "RNG seed (required)");
  run->add_option("--oracle-n", run_opts.oracle_n,
                  "samples per MC-estimator update");
  run->add_option("--out", run_opts.out_dir, "output directory");
  run->add_option("--trajectories", run_opts.trajectories,
                  "number of runs whose trajectory CSV is written");
  run->add_flag("--sqrt-metric", run_opts.sqrt_metric,
                "report sqrt(d) instead of d");
  run->add_flag("--strict", run_opts.strict, "exit 3 if any run diverged");
  run->add_option("--sigma-pos", run_opts.ncv.sigma_pos,
                  "NCV process noise std: center");
  run->add_option("--sigma-alpha", run_opts.ncv.sigma_alpha,
                  "NCV process noise std: orientation");
  run->add_option("--sigma-len", run_opts.ncv.sigma_len,
                  "NCV process noise std: semi-axes");
  run->add_option("--sigma-vel", run_opts.ncv.sigma_vel,
                  "NCV process noise std: velocity");

  std::string metric_a, metric_b;
  bool metric_sqrt = false;
  CLI::App* metric = app.add_subcommand(
      "metric", "Per-step d between two trajectory CSV files");
  metric->add_option("file_a", metric_a, "first trajectory CSV")->required();
  metric->add_option("file_b", metric_b, "second trajectory CSV")->required();
  metric->add_flag("--sqrt-metric", metric_sqrt, "report sqrt(d)");

  SelftestOptions selftest_opts;
  CLI::App* selftest = app.add_subcommand(
      "selftest", "Derivative and moment-oracle consistency checks");
  selftest->add_option("--n", selftest_opts.oracle_samples,
                       "oracle samples per batch");
  selftest->add_option("--seed", selftest_opts.seed, "RNG seed");
  selftest->add_option("--fd-points", selftest_opts.fd_points,
                       "finite-difference evaluation points");
  selftest->add_option("--gh-cases", selftest_opts.gh_cases,
                       "Gauss-Hermite comparison cases");
  selftest->add_flag("--inject-jacobian-flip",
                     selftest_opts.inject_jacobian_flip,
                     "mutation fixture: flip one Jacobian entry, must fail");

  // First pass: pick up --config so its values can serve as flag defaults.
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    std::string value;
    if (arg == "--config" && i + 1 < argc) value = argv[i + 1];
    else if (arg.rfind("--config=", 0) == 0) value = arg.substr(9);
    else continue;
    try {
      apply_config(parse_config_text(read_file(value)), run_opts);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitConfigError;
    }
    break;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfigError;
  }

  try {
    if (run->parsed()) return cmd_run(run_opts);
    if (metric->parsed()) return cmd_metric(metric_a, metric_b, metric_sqrt);
    if (selftest->parsed()) return cmd_selftest(selftest_opts);
  } catch (const MismatchedSpread& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

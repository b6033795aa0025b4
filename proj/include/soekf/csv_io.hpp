#pragma once

#include "soekf/simulation.hpp"

#include <map>
#include <string>
#include <vector>

namespace soekf {

// One number, 9 significant digits, '.' decimal point.
std::string format_g9(double v);

struct TrajectoryRow {
  int step = 0;
  EllipseParams shape;
  bool has_velocity = false;
  Vec2 velocity = Vec2::Zero();
};

// Schema: step,m1,m2,alpha,l1,l2[,r1,r2]; comma separator, LF endings,
// mandatory header. Throws ParseError on malformed input.
std::string trajectory_csv(const std::vector<TrajectoryRow>& rows);
std::vector<TrajectoryRow> parse_trajectory_csv(const std::string& text);

// metrics_<estimator>_<scenario>.csv body: run,step,d.
std::string metrics_csv(const std::vector<RunResult>& results);

// summary.csv body: step,mean_d,std_d.
std::string summary_csv(const std::vector<SummaryRow>& rows);

TrajectoryRow trajectory_row(const StepRecord& rec);
std::vector<TrajectoryRow> estimate_trajectory(const RunResult& run);
std::vector<TrajectoryRow> ground_truth_trajectory(const ScenarioConfig& cfg);

// Flat "key = value" config text. Keys mirror the CLI flag names; parsing
// ignores blank lines and '#' comments; serialization is canonical (sorted
// keys), so serialize(parse(serialize(m))) == serialize(m).
using KeyValueMap = std::map<std::string, std::string>;
KeyValueMap parse_config_text(const std::string& text);
std::string serialize_config_text(const KeyValueMap& kv);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace soekf

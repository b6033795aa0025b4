#include "soekf/csv_io.hpp"

#include "soekf/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace soekf {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& s, const char* what) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') {
    throw ParseError(std::string("bad ") + what + " value: '" + s + "'");
  }
  return v;
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

constexpr const char* kTrajHeader = "step,m1,m2,alpha,l1,l2";
constexpr const char* kTrajHeaderVel = "step,m1,m2,alpha,l1,l2,r1,r2";

}  // namespace

std::string format_g9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

std::string trajectory_csv(const std::vector<TrajectoryRow>& rows) {
  const bool vel = !rows.empty() && rows.front().has_velocity;
  std::string out = vel ? kTrajHeaderVel : kTrajHeader;
  out.push_back('\n');
  for (const TrajectoryRow& r : rows) {
    out += std::to_string(r.step);
    out += ',' + format_g9(r.shape.center[0]);
    out += ',' + format_g9(r.shape.center[1]);
    out += ',' + format_g9(r.shape.alpha);
    out += ',' + format_g9(r.shape.half_lengths[0]);
    out += ',' + format_g9(r.shape.half_lengths[1]);
    if (vel) {
      out += ',' + format_g9(r.velocity[0]);
      out += ',' + format_g9(r.velocity[1]);
    }
    out.push_back('\n');
  }
  return out;
}

std::vector<TrajectoryRow> parse_trajectory_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty trajectory file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  bool vel;
  if (line == kTrajHeader) {
    vel = false;
  } else if (line == kTrajHeaderVel) {
    vel = true;
  } else {
    throw ParseError("unexpected trajectory header: '" + line + "'");
  }

  std::vector<TrajectoryRow> rows;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != (vel ? 8u : 6u)) {
      throw ParseError("wrong column count in row: '" + line + "'");
    }
    TrajectoryRow r;
    r.step = static_cast<int>(parse_double(f[0], "step"));
    r.shape.center = Vec2(parse_double(f[1], "m1"), parse_double(f[2], "m2"));
    r.shape.alpha = parse_double(f[3], "alpha");
    r.shape.half_lengths =
        Vec2(parse_double(f[4], "l1"), parse_double(f[5], "l2"));
    r.has_velocity = vel;
    if (vel) {
      r.velocity = Vec2(parse_double(f[6], "r1"), parse_double(f[7], "r2"));
    }
    rows.push_back(r);
  }
  return rows;
}

std::string metrics_csv(const std::vector<RunResult>& results) {
  std::string out = "run,step,d\n";
  for (const RunResult& r : results) {
    for (const StepRecord& rec : r.trajectory) {
      out += std::to_string(r.run_index);
      out += ',' + std::to_string(rec.step);
      out += ',' + format_g9(rec.metric);
      out.push_back('\n');
    }
  }
  return out;
}

std::string summary_csv(const std::vector<SummaryRow>& rows) {
  std::string out = "step,mean_d,std_d\n";
  for (const SummaryRow& r : rows) {
    out += std::to_string(r.step);
    out += ',' + format_g9(r.mean_d);
    out += ',' + format_g9(r.std_d);
    out.push_back('\n');
  }
  return out;
}

TrajectoryRow trajectory_row(const StepRecord& rec) {
  TrajectoryRow r;
  r.step = rec.step;
  r.shape = rec.estimate.shape();
  if (rec.estimate.kinematic_extra_dim == 2) {
    r.has_velocity = true;
    r.velocity = rec.estimate.mean.segment<2>(kShapeDim);
  }
  return r;
}

std::vector<TrajectoryRow> estimate_trajectory(const RunResult& run) {
  std::vector<TrajectoryRow> rows;
  rows.reserve(run.trajectory.size());
  for (const StepRecord& rec : run.trajectory) {
    rows.push_back(trajectory_row(rec));
  }
  return rows;
}

std::vector<TrajectoryRow> ground_truth_trajectory(const ScenarioConfig& cfg) {
  std::vector<TrajectoryRow> rows;
  const bool vel = cfg.kind == ScenarioKind::kRectangleNcv;
  const int first = cfg.steps == 0 ? 0 : 1;
  for (int k = first; k <= cfg.steps; ++k) {
    const GroundTruthState& gt = cfg.ground_truth.at(static_cast<size_t>(k));
    TrajectoryRow r;
    r.step = k;
    r.shape = gt.shape;
    r.has_velocity = vel;
    r.velocity = gt.velocity;
    rows.push_back(r);
  }
  return rows;
}

KeyValueMap parse_config_text(const std::string& text) {
  KeyValueMap kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ParseError("config line " + std::to_string(lineno) +
                       " has no '='");
    }
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key.empty()) {
      throw ParseError("config line " + std::to_string(lineno) +
                       " has an empty key");
    }
    kv[key] = value;
  }
  return kv;
}

std::string serialize_config_text(const KeyValueMap& kv) {
  std::string out;
  for (const auto& [key, value] : kv) {
    out += key + " = " + value + "\n";
  }
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace soekf

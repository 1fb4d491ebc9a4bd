#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gainsched/core/types.hpp"

namespace gainsched::sim {

struct TickRecord {
  double t = 0.0;
  std::string scene_stub;
  PayloadReason reason = PayloadReason::fallback;
  int v_code = 0;
  std::array<double, kNumJoints> kp{};
  std::array<double, kNumJoints> kd{};
  JointVector q{};
  JointVector q_ref{};
  JointVector tau{};
  std::string event;  // marker fired at this tick, empty otherwise
};

struct RunLog {
  std::string script_name;
  std::vector<TickRecord> ticks;
  int missed_ticks = 0;

  std::string to_csv() const;
  static RunLog from_csv(const std::string& text, const std::string& source);
  void save(const std::string& path) const;
  static RunLog load(const std::string& path);
};

/// Per-phase aggregates; phases are delimited by scene-change markers.
struct PhaseMetrics {
  std::string stub;
  double t_start = 0.0;
  double t_end = 0.0;
  std::array<double, kNumJoints> mean_kp{};
  std::array<double, kNumJoints> mean_kd{};
  std::array<double, kNumJoints> last_kp{};
  std::array<double, kNumJoints> last_kd{};
  int last_v = 0;
  double max_tracking_error = 0.0;
  /// Scene change to 90% of the gain transition; absent when gains did not
  /// change. A proxy metric: the "settled" gains are the phase's last tick.
  std::optional<double> time_to_modulate;
};

struct Metrics {
  std::vector<PhaseMetrics> phases;
  std::map<std::string, std::size_t> reason_histogram;
  int missed_ticks = 0;
  double max_tracking_error = 0.0;

  std::string to_text() const;
};

/// Throws ContractError on an empty log.
Metrics analyze(const RunLog& log);

}  // namespace gainsched::sim

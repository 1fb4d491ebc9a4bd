#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gainsched/kinematics/kinematics.hpp"

namespace gainsched::sim {

struct ScriptEvent {
  enum class Type { set_scene, set_target, inject_latency, drop_connection };
  double t = 0.0;
  Type type = Type::set_scene;
  std::string stub;                               // set_scene
  std::optional<std::pair<kin::Pose6D, kin::Pose6D>> targets;  // set_target
  double seconds = 0.0;                           // inject_latency
  double duration = 0.0;                          // drop_connection
};

/// Scripted timeline: scene changes, target changes, latency injection and
/// connection drops at fixed times. Event times must be nondecreasing.
struct ScenarioScript {
  std::string name;
  double duration = 20.0;
  std::vector<ScriptEvent> timeline;

  static ScenarioScript load(const std::string& path);
  static ScenarioScript parse(const std::string& json_text,
                              const std::string& source);
};

}  // namespace gainsched::sim

#include "gainsched/sim/script.hpp"

#include <json.hpp>

#include "gainsched/core/errors.hpp"
#include "gainsched/core/strings.hpp"

namespace gainsched::sim {

using nlohmann::json;

namespace {

kin::Pose6D parse_pose(const json& j, const std::string& what) {
  kin::Pose6D pose;
  if (!j.contains("pos") || !j["pos"].is_array() || j["pos"].size() != 3)
    throw ConfigError(what + ": 'pos' must be [x, y, z]");
  pose.position = {j["pos"][0].get<double>(), j["pos"][1].get<double>(),
                   j["pos"][2].get<double>()};
  if (j.contains("quat")) {
    const auto& q = j["quat"];
    if (!q.is_array() || q.size() != 4)
      throw ConfigError(what + ": 'quat' must be [w, x, y, z]");
    pose.orientation = Eigen::Quaterniond(q[0].get<double>(), q[1].get<double>(),
                                          q[2].get<double>(), q[3].get<double>());
    const double n = pose.orientation.norm();
    if (n < 1e-9) throw ConfigError(what + ": zero quaternion");
    pose.orientation.coeffs() /= n;
  }
  return pose;
}

}  // namespace

ScenarioScript ScenarioScript::parse(const std::string& json_text,
                                     const std::string& source) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(source + ": " + e.what());
  }
  ScenarioScript script;
  script.name = j.value("name", source);
  script.duration = j.value("duration", 20.0);
  if (!(script.duration > 0.0))
    throw ConfigError(source + ": duration must be positive");
  if (!j.contains("timeline") || !j["timeline"].is_array())
    throw ConfigError(source + ": needs a 'timeline' array");

  double prev_t = -1.0;
  for (const auto& ev : j["timeline"]) {
    ScriptEvent e;
    e.t = ev.at("t").get<double>();
    if (e.t < prev_t)
      throw ConfigError(source + ": event times must be nondecreasing");
    prev_t = e.t;
    const std::string kind = ev.at("event").get<std::string>();
    if (kind == "set_scene") {
      e.type = ScriptEvent::Type::set_scene;
      e.stub = ev.at("stub").get<std::string>();
    } else if (kind == "set_target") {
      e.type = ScriptEvent::Type::set_target;
      e.targets = {parse_pose(ev.at("left"), source + ": set_target.left"),
                   parse_pose(ev.at("right"), source + ": set_target.right")};
    } else if (kind == "inject_latency") {
      e.type = ScriptEvent::Type::inject_latency;
      e.seconds = ev.at("seconds").get<double>();
      if (e.seconds < 0.0)
        throw ConfigError(source + ": latency must be >= 0");
    } else if (kind == "drop_connection") {
      e.type = ScriptEvent::Type::drop_connection;
      e.duration = ev.at("duration").get<double>();
      if (!(e.duration > 0.0))
        throw ConfigError(source + ": drop duration must be positive");
    } else {
      throw ConfigError(source + ": unknown event '" + kind + "'");
    }
    script.timeline.push_back(std::move(e));
  }
  return script;
}

ScenarioScript ScenarioScript::load(const std::string& path) {
  return parse(str::read_file(path), path);
}

}  // namespace gainsched::sim

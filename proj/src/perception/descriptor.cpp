#include "gainsched/perception/descriptor.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "gainsched/core/errors.hpp"
#include "gainsched/core/strings.hpp"

namespace gainsched::percept {

using nlohmann::json;

bool operator==(const SceneDescriptor& a, const SceneDescriptor& b) {
  return a.task_type == b.task_type && a.main_object == b.main_object &&
         a.object_fragility == b.object_fragility &&
         a.human_presence == b.human_presence &&
         a.obstacle_count == b.obstacle_count &&
         a.obstacle_type == b.obstacle_type &&
         a.workspace_condition == b.workspace_condition &&
         a.arm_posture == b.arm_posture &&
         a.object_location == b.object_location && a.spacing == b.spacing &&
         a.complexity == b.complexity && a.confidence == b.confidence;
}

const std::vector<std::string>& descriptor_keys() {
  static const std::vector<std::string> keys = {
      "task_type",      "main_object", "object_fragility",
      "human_presence", "obstacle_count", "obstacle_type",
      "workspace_condition", "arm_posture", "object_location",
      "spacing",        "complexity",  "confidence"};
  return keys;
}

namespace {

std::string require_string(const json& j, const std::string& key) {
  if (!j.contains(key)) throw SchemaError("scene message missing key '" + key + "'");
  if (!j[key].is_string())
    throw SchemaError("scene key '" + key + "' must be a string");
  return j[key].get<std::string>();
}

}  // namespace

SceneDescriptor parse_descriptor(const std::string& json_text,
                                 std::vector<std::string>* warnings) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw SchemaError(std::string("scene message is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw SchemaError("scene message must be a JSON object");

  SceneDescriptor d;
  d.task_type = require_string(j, "task_type");
  d.main_object = require_string(j, "main_object");
  d.object_fragility = require_string(j, "object_fragility");
  d.human_presence = require_string(j, "human_presence");

  if (!j.contains("obstacle_count"))
    throw SchemaError("scene message missing key 'obstacle_count'");
  if (!j["obstacle_count"].is_number_integer() ||
      j["obstacle_count"].get<long long>() < 0)
    throw SchemaError("scene key 'obstacle_count' must be a non-negative integer");
  d.obstacle_count = j["obstacle_count"].get<long long>();

  d.obstacle_type = require_string(j, "obstacle_type");
  d.workspace_condition = require_string(j, "workspace_condition");
  d.arm_posture = require_string(j, "arm_posture");
  d.object_location = require_string(j, "object_location");
  if (d.object_location != "left" && d.object_location != "center" &&
      d.object_location != "right")
    throw SchemaError("scene key 'object_location' must be left, center or right");
  d.spacing = require_string(j, "spacing");
  d.complexity = require_string(j, "complexity");

  if (!j.contains("confidence"))
    throw SchemaError("scene message missing key 'confidence'");
  if (!j["confidence"].is_number())
    throw SchemaError("scene key 'confidence' must be a number");
  d.confidence = j["confidence"].get<double>();
  if (!std::isfinite(d.confidence) || d.confidence < 0.0 || d.confidence > 1.0)
    throw ValidationError("confidence " + str::format_double(d.confidence) +
                          " outside [0, 1]");

  if (warnings) {
    const auto& keys = descriptor_keys();
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (std::find(keys.begin(), keys.end(), it.key()) == keys.end())
        warnings->push_back("ignoring unknown scene key '" + it.key() + "'");
    }
  }
  return d;
}

std::string descriptor_to_json(const SceneDescriptor& d) {
  json j;
  j["task_type"] = d.task_type;
  j["main_object"] = d.main_object;
  j["object_fragility"] = d.object_fragility;
  j["human_presence"] = d.human_presence;
  j["obstacle_count"] = d.obstacle_count;
  j["obstacle_type"] = d.obstacle_type;
  j["workspace_condition"] = d.workspace_condition;
  j["arm_posture"] = d.arm_posture;
  j["object_location"] = d.object_location;
  j["spacing"] = d.spacing;
  j["complexity"] = d.complexity;
  j["confidence"] = d.confidence;
  return j.dump(2);
}

namespace {

NormalizationRule parse_rule(const json& j, const std::string& field,
                             const std::string& source) {
  NormalizationRule rule;
  if (!j.is_object() || !j.contains("default"))
    throw ConfigError(source + ": normalization rule for '" + field +
                      "' needs a 'default'");
  rule.fallback = j["default"].get<std::string>();
  if (j.contains("exact")) {
    for (auto it = j["exact"].begin(); it != j["exact"].end(); ++it)
      rule.exact.emplace_back(str::to_lower(it.key()),
                              it.value().get<std::string>());
  }
  if (j.contains("contains")) {
    for (const auto& entry : j["contains"])
      rule.contains.emplace_back(str::to_lower(entry.at(0).get<std::string>()),
                                 entry.at(1).get<std::string>());
  }
  return rule;
}

}  // namespace

NormalizationTable NormalizationTable::parse(const std::string& json_text,
                                             const std::string& source) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(source + ": " + e.what());
  }
  NormalizationTable t;
  t.task_type = parse_rule(j.at("task_type"), "task_type", source);
  t.main_object = parse_rule(j.at("main_object"), "main_object", source);
  t.object_fragility =
      parse_rule(j.at("object_fragility"), "object_fragility", source);
  t.human_presence =
      parse_rule(j.at("human_presence"), "human_presence", source);

  // Every rule target must be a database enum value.
  Task task;
  MainObject obj;
  Fragility frag;
  HumanPresence hp;
  auto check = [&](const NormalizationRule& rule, auto& parsed, auto parser,
                   const char* field) {
    auto verify = [&](const std::string& target) {
      if (!parser(target, parsed))
        throw ConfigError(source + ": rule for '" + std::string(field) +
                          "' maps to unknown enum value '" + target + "'");
    };
    verify(rule.fallback);
    for (const auto& [k, v] : rule.exact) verify(v);
    for (const auto& [k, v] : rule.contains) verify(v);
  };
  check(t.task_type, task, task_from_string, "task_type");
  check(t.main_object, obj, main_object_from_string, "main_object");
  check(t.object_fragility, frag, fragility_from_string, "object_fragility");
  check(t.human_presence, hp, human_presence_from_string, "human_presence");
  return t;
}

NormalizationTable NormalizationTable::load(const std::string& path) {
  return parse(str::read_file(path), path);
}

std::string apply_rule(const NormalizationRule& rule, const std::string& raw) {
  const std::string key = str::to_lower(str::trim(raw));
  for (const auto& [k, v] : rule.exact)
    if (key == k) return v;
  for (const auto& [needle, v] : rule.contains)
    if (!needle.empty() && key.find(needle) != std::string::npos) return v;
  return rule.fallback;
}

NormalizedDescriptor normalize(const NormalizationTable& table,
                               const SceneDescriptor& d) {
  NormalizedDescriptor n;
  task_from_string(apply_rule(table.task_type, d.task_type), n.task);
  main_object_from_string(apply_rule(table.main_object, d.main_object),
                          n.main_object);
  fragility_from_string(apply_rule(table.object_fragility, d.object_fragility),
                        n.fragility);
  human_presence_from_string(
      apply_rule(table.human_presence, d.human_presence), n.human_presence);
  n.obstacle_count = d.obstacle_count;
  n.obstacle_type = d.obstacle_type;
  n.workspace_condition = d.workspace_condition;
  n.arm_posture = d.arm_posture;
  n.object_location = d.object_location;
  n.spacing = d.spacing;
  n.complexity = d.complexity;
  n.confidence = d.confidence;
  return n;
}

std::string to_query_text(const NormalizedDescriptor& n) {
  std::ostringstream out;
  out << "task_type=" << to_string(n.task)
      << "; main_object=" << to_string(n.main_object)
      << "; object_fragility=" << to_string(n.fragility)
      << "; human_presence=" << to_string(n.human_presence)
      << "; obstacle_count=" << n.obstacle_count
      << "; obstacle_type=" << n.obstacle_type
      << "; workspace_condition=" << n.workspace_condition
      << "; arm_posture=" << n.arm_posture
      << "; object_location=" << n.object_location
      << "; spacing=" << n.spacing << "; complexity=" << n.complexity
      << "; confidence=" << str::format_double(n.confidence);
  return out.str();
}

}  // namespace gainsched::percept

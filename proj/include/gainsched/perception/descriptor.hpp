#pragma once

#include <string>
#include <vector>

#include "gainsched/core/types.hpp"

namespace gainsched::percept {

// Fixed 12-key scene schema. Key names and their order are frozen: the
// canonical query text must be byte-stable across builds.
struct SceneDescriptor {
  std::string task_type;
  std::string main_object;
  std::string object_fragility;
  std::string human_presence;
  long long obstacle_count = 0;
  std::string obstacle_type;
  std::string workspace_condition;
  std::string arm_posture;
  std::string object_location;  // left | center | right
  std::string spacing;
  std::string complexity;
  double confidence = 0.0;  // in [0, 1]
};

bool operator==(const SceneDescriptor& a, const SceneDescriptor& b);

const std::vector<std::string>& descriptor_keys();

/// Parses a JSON scene message. Missing key -> SchemaError naming the key;
/// confidence outside [0,1] -> ValidationError; extra keys are ignored and
/// reported through `warnings` when given.
SceneDescriptor parse_descriptor(const std::string& json_text,
                                 std::vector<std::string>* warnings = nullptr);

std::string descriptor_to_json(const SceneDescriptor& d);

/// Enum fields mapped onto the database vocabulary; the other eight fields
/// carried through verbatim.
struct NormalizedDescriptor {
  Task task = Task::other;
  MainObject main_object = MainObject::other;
  Fragility fragility = Fragility::non_fragile;
  HumanPresence human_presence = HumanPresence::none;
  long long obstacle_count = 0;
  std::string obstacle_type;
  std::string workspace_condition;
  std::string arm_posture;
  std::string object_location;
  std::string spacing;
  std::string complexity;
  double confidence = 0.0;
};

/// String-to-enum rules for one descriptor field: exact matches first, then
/// substring rules in file order, then the default.
struct NormalizationRule {
  std::vector<std::pair<std::string, std::string>> exact;
  std::vector<std::pair<std::string, std::string>> contains;
  std::string fallback;
};

struct NormalizationTable {
  NormalizationRule task_type;
  NormalizationRule main_object;
  NormalizationRule object_fragility;
  NormalizationRule human_presence;

  static NormalizationTable load(const std::string& path);
  static NormalizationTable parse(const std::string& json_text,
                                  const std::string& source);
};

std::string apply_rule(const NormalizationRule& rule, const std::string& raw);

/// Total, idempotent on enum fields.
NormalizedDescriptor normalize(const NormalizationTable& table,
                               const SceneDescriptor& d);

/// Canonical retrieval text: schema-ordered `key=value` pairs joined by "; ".
std::string to_query_text(const NormalizedDescriptor& n);

}  // namespace gainsched::percept

#pragma once

#include <chrono>
#include <map>
#include <string>
#include <vector>

#include "gainsched/core/types.hpp"

namespace gainsched::db {

/// One invariant violation found in a record. Findings are data, not errors.
struct Finding {
  std::string scenario_id;
  std::string field;
  std::string message;
};

struct ValidationReport {
  std::vector<Finding> findings;
  bool ok() const { return findings.empty(); }
};

ValidationReport validate_record(const ScenarioRecord& rec);

struct ScenarioDatabase {
  std::vector<ScenarioRecord> records;
  std::string source_path;
  std::chrono::system_clock::time_point loaded_at;
};

/// Per-field category histograms over a loaded database.
struct CategoryCounts {
  std::map<std::string, std::size_t> task;
  std::map<std::string, std::size_t> main_object;
  std::map<std::string, std::size_t> object_fragility;
  std::map<std::string, std::size_t> human_presence;
  std::map<std::string, std::size_t> nominal_v;
};

CategoryCounts category_counts(const ScenarioDatabase& database);

// Fixed 35-column CSV layout: the 34 database columns (6 identity/semantic +
// 28 gains, L0_kp..L6_kd then R0_kp..R6_kd) plus the trailing description
// column holding the canonical query text. See docs/database_schema.md.
const std::vector<std::string>& csv_columns();

/// Loads and fully validates a database. Throws SchemaError on a header
/// mismatch, ValidationError on unparseable rows or invariant violations.
ScenarioDatabase load_database(const std::string& path);

ScenarioDatabase parse_database_csv(const std::string& text,
                                    const std::string& source_path);

std::string serialize_database(const ScenarioDatabase& database);

}  // namespace gainsched::db

#include "gainsched/db/scenario_db.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "gainsched/core/errors.hpp"
#include "gainsched/core/strings.hpp"

namespace gainsched::db {

namespace {

void check_gain_list(const std::string& id, const std::string& field,
                     const std::vector<double>& values, double lo, double hi,
                     std::vector<Finding>& out) {
  if (values.size() != kNumJoints) {
    out.push_back({id, field,
                   field + " has " + std::to_string(values.size()) +
                       " elements, expected " + std::to_string(kNumJoints)});
    return;
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = values[i];
    if (!std::isfinite(v)) {
      out.push_back({id, field + "[" + std::to_string(i) + "]",
                     field + "[" + std::to_string(i) + "] is not finite"});
      continue;
    }
    if (!(v >= lo) || !(v <= hi)) {
      out.push_back({id, field + "[" + std::to_string(i) + "]",
                     field + "[" + std::to_string(i) + "]=" +
                         str::format_double(v) + " outside [" +
                         str::format_double(lo) + ", " +
                         str::format_double(hi) + "]"});
    }
  }
}

}  // namespace

ValidationReport validate_record(const ScenarioRecord& rec) {
  ValidationReport report;
  if (rec.scenario_id.empty())
    report.findings.push_back({rec.scenario_id, "scenario_id", "scenario_id is empty"});
  check_gain_list(rec.scenario_id, "kp", rec.gains.kp, kKpMin, kKpMax,
                  report.findings);
  check_gain_list(rec.scenario_id, "kd", rec.gains.kd, kKdMin, kKdMax,
                  report.findings);
  return report;
}

CategoryCounts category_counts(const ScenarioDatabase& database) {
  CategoryCounts c;
  for (const auto& r : database.records) {
    ++c.task[to_string(r.task)];
    ++c.main_object[to_string(r.main_object)];
    ++c.object_fragility[to_string(r.fragility)];
    ++c.human_presence[to_string(r.human_presence)];
    ++c.nominal_v[to_string(r.nominal_v)];
  }
  return c;
}

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols = [] {
    std::vector<std::string> c = {"scenario_id",      "task_enum",
                                  "main_object",      "object_fragility",
                                  "human_presence",   "nominal_v"};
    for (const char* side : {"L", "R"}) {
      for (int j = 0; j < static_cast<int>(kArmJoints); ++j) {
        c.push_back(std::string(side) + std::to_string(j) + "_kp");
        c.push_back(std::string(side) + std::to_string(j) + "_kd");
      }
    }
    c.push_back("description");
    return c;
  }();
  return cols;
}

ScenarioDatabase parse_database_csv(const std::string& text,
                                    const std::string& source_path) {
  const auto rows = str::parse_csv(text);
  if (rows.empty()) throw SchemaError(source_path + ": missing header row");

  const auto& expected = csv_columns();
  const auto& header = rows[0];
  const std::size_t n = std::min(expected.size(), header.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (std::string(str::trim(header[i])) != expected[i])
      throw SchemaError(source_path + ": column " + std::to_string(i + 1) +
                        " is '" + header[i] + "', expected '" + expected[i] +
                        "'");
  }
  if (header.size() < expected.size())
    throw SchemaError(source_path + ": missing column '" + expected[header.size()] + "'");
  if (header.size() > expected.size())
    throw SchemaError(source_path + ": unexpected extra column '" +
                      header[expected.size()] + "'");

  ScenarioDatabase database;
  database.source_path = source_path;
  database.loaded_at = std::chrono::system_clock::now();

  std::vector<Finding> findings;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    const std::string where = source_path + ": row " + std::to_string(r);
    if (row.size() != expected.size())
      throw ValidationError(where + " has " + std::to_string(row.size()) +
                            " fields, expected " +
                            std::to_string(expected.size()));

    ScenarioRecord rec;
    rec.scenario_id = std::string(str::trim(row[0]));
    if (!task_from_string(std::string(str::trim(row[1])), rec.task))
      throw ValidationError(where + ": bad task_enum '" + row[1] + "'");
    if (!main_object_from_string(std::string(str::trim(row[2])), rec.main_object))
      throw ValidationError(where + ": bad main_object '" + row[2] + "'");
    if (!fragility_from_string(std::string(str::trim(row[3])), rec.fragility))
      throw ValidationError(where + ": bad object_fragility '" + row[3] + "'");
    if (!human_presence_from_string(std::string(str::trim(row[4])), rec.human_presence))
      throw ValidationError(where + ": bad human_presence '" + row[4] + "'");
    if (!speed_from_string(std::string(str::trim(row[5])), rec.nominal_v))
      throw ValidationError(where + ": bad nominal_v '" + row[5] + "'");

    rec.gains.kp.resize(kNumJoints);
    rec.gains.kd.resize(kNumJoints);
    for (std::size_t j = 0; j < kNumJoints; ++j) {
      const std::size_t col = 6 + 2 * j;
      if (!str::parse_double(row[col], rec.gains.kp[j]))
        throw ValidationError(where + ": unparseable numeric in column '" +
                              expected[col] + "': '" + row[col] + "'");
      if (!str::parse_double(row[col + 1], rec.gains.kd[j]))
        throw ValidationError(where + ": unparseable numeric in column '" +
                              expected[col + 1] + "': '" + row[col + 1] + "'");
    }
    rec.description = row[34];

    auto report = validate_record(rec);
    findings.insert(findings.end(), report.findings.begin(),
                    report.findings.end());
    database.records.push_back(std::move(rec));
  }

  std::set<std::string> ids;
  for (const auto& rec : database.records) {
    if (!ids.insert(rec.scenario_id).second)
      findings.push_back({rec.scenario_id, "scenario_id",
                          "duplicate scenario_id '" + rec.scenario_id + "'"});
  }

  if (!findings.empty()) {
    std::ostringstream msg;
    msg << source_path << ": " << findings.size() << " validation finding(s):";
    for (const auto& f : findings)
      msg << "\n  [" << f.scenario_id << "] " << f.message;
    throw ValidationError(msg.str());
  }
  return database;
}

ScenarioDatabase load_database(const std::string& path) {
  return parse_database_csv(str::read_file(path), path);
}

std::string serialize_database(const ScenarioDatabase& database) {
  std::ostringstream out;
  const auto& cols = csv_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (i) out << ',';
    out << cols[i];
  }
  out << '\n';
  for (const auto& r : database.records) {
    out << str::csv_escape(r.scenario_id) << ',' << to_string(r.task) << ','
        << to_string(r.main_object) << ',' << to_string(r.fragility) << ','
        << to_string(r.human_presence) << ',' << to_string(r.nominal_v);
    for (std::size_t j = 0; j < kNumJoints; ++j) {
      out << ',' << str::format_double(r.gains.kp[j]) << ','
          << str::format_double(r.gains.kd[j]);
    }
    out << ',' << str::csv_escape(r.description) << '\n';
  }
  return out.str();
}

}  // namespace gainsched::db

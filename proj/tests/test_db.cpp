#include <doctest.h>

#include "gainsched/core/errors.hpp"
#include "gainsched/db/scenario_db.hpp"
#include "test_util.hpp"

using namespace gainsched;

namespace {

std::string header_line() {
  std::string h;
  for (const auto& c : db::csv_columns()) {
    if (!h.empty()) h += ',';
    h += c;
  }
  return h;
}

ScenarioRecord make_record(const std::string& id, double kp, double kd) {
  ScenarioRecord rec;
  rec.scenario_id = id;
  rec.task = Task::pick;
  rec.main_object = MainObject::cube;
  rec.fragility = Fragility::non_fragile;
  rec.human_presence = HumanPresence::none;
  rec.nominal_v = Speed::mid;
  rec.gains.kp.assign(kNumJoints, kp);
  rec.gains.kd.assign(kNumJoints, kd);
  rec.description = "desc " + id;
  return rec;
}

}  // namespace

TEST_CASE("seed database loads with the published category coverage") {
  const auto database = db::load_database(data_path("scenario_db.csv"));
  CHECK(database.records.size() == 16);
  const auto counts = db::category_counts(database);
  CHECK(counts.task.at("pick") == 9);
  CHECK(counts.task.at("handover") == 4);
  CHECK(counts.task.at("other") == 3);
  CHECK(counts.human_presence.at("none") == 9);
  CHECK(counts.human_presence.at("hand_visible") == 7);
  CHECK(counts.main_object.at("cube") == 3);
  CHECK(counts.main_object.at("fruit") == 3);
  CHECK(counts.main_object.at("other") == 10);

  std::size_t total = 0;
  for (const auto& [k, v] : counts.task) total += v;
  CHECK(total == database.records.size());
}

TEST_CASE("empty file with valid header loads as empty database") {
  const auto database = db::parse_database_csv(header_line() + "\n", "mem");
  CHECK(database.records.empty());
  const auto counts = db::category_counts(database);
  CHECK(counts.task.empty());
}

TEST_CASE("schema errors name the offending column") {
  CHECK_THROWS_AS(db::parse_database_csv("", "mem"), SchemaError);

  std::string missing = header_line();
  missing = missing.substr(0, missing.rfind(','));  // drop description
  CHECK_THROWS_WITH_AS(db::parse_database_csv(missing + "\n", "mem"),
                       doctest::Contains("description"), SchemaError);

  CHECK_THROWS_WITH_AS(
      db::parse_database_csv(header_line() + ",extra\n", "mem"),
      doctest::Contains("extra"), SchemaError);

  std::string swapped = header_line();
  const auto pos = swapped.find("task_enum");
  swapped.replace(pos, 9, "task_name");
  CHECK_THROWS_AS(db::parse_database_csv(swapped + "\n", "mem"), SchemaError);
}

TEST_CASE("unparseable numerics report the row") {
  db::ScenarioDatabase database;
  database.records.push_back(make_record("a", 30.0, 1.0));
  std::string csv = db::serialize_database(database);
  const auto pos = csv.find("30");
  csv.replace(pos, 2, "xx");
  CHECK_THROWS_WITH_AS(db::parse_database_csv(csv, "mem"),
                       doctest::Contains("row 1"), ValidationError);
}

TEST_CASE("out-of-range gains are rejected with the bound named") {
  db::ScenarioDatabase database;
  database.records.push_back(make_record("hot", 70.0, 1.0));
  const std::string csv = db::serialize_database(database);
  CHECK_THROWS_WITH_AS(db::parse_database_csv(csv, "mem"),
                       doctest::Contains("60"), ValidationError);
}

TEST_CASE("validate_record findings") {
  SUBCASE("range endpoints are accepted") {
    const auto rec = make_record("lo", 10.0, 0.1);
    CHECK(db::validate_record(rec).ok());
    const auto hi = make_record("hi", 60.0, 2.0);
    CHECK(db::validate_record(hi).ok());
  }
  SUBCASE("kd below range") {
    auto rec = make_record("bad", 30.0, 0.0);
    const auto report = db::validate_record(rec);
    REQUIRE(report.findings.size() == kNumJoints);
    CHECK(report.findings[0].field == "kd[0]");
  }
  SUBCASE("13-element gain list") {
    auto rec = make_record("short", 30.0, 1.0);
    rec.gains.kp.resize(13);
    const auto report = db::validate_record(rec);
    REQUIRE(report.findings.size() == 1);
    CHECK(report.findings[0].message.find("13") != std::string::npos);
    CHECK(report.findings[0].message.find("14") != std::string::npos);
  }
  SUBCASE("non-finite gain") {
    auto rec = make_record("nan", 30.0, 1.0);
    rec.gains.kp[3] = std::numeric_limits<double>::quiet_NaN();
    CHECK_FALSE(db::validate_record(rec).ok());
  }
}

TEST_CASE("duplicate scenario ids are rejected at load") {
  db::ScenarioDatabase database;
  database.records.push_back(make_record("same", 30.0, 1.0));
  database.records.push_back(make_record("same", 40.0, 1.5));
  const std::string csv = db::serialize_database(database);
  CHECK_THROWS_WITH_AS(db::parse_database_csv(csv, "mem"),
                       doctest::Contains("duplicate"), ValidationError);
}

TEST_CASE("serialize/parse round-trip is field-exact") {
  const auto database = db::load_database(data_path("scenario_db.csv"));
  const auto reparsed =
      db::parse_database_csv(db::serialize_database(database), "mem");
  REQUIRE(reparsed.records.size() == database.records.size());
  for (std::size_t i = 0; i < database.records.size(); ++i) {
    const auto& a = database.records[i];
    const auto& b = reparsed.records[i];
    CHECK(a.scenario_id == b.scenario_id);
    CHECK(a.task == b.task);
    CHECK(a.main_object == b.main_object);
    CHECK(a.fragility == b.fragility);
    CHECK(a.human_presence == b.human_presence);
    CHECK(a.nominal_v == b.nominal_v);
    CHECK(a.description == b.description);
    CHECK(a.gains.kp == b.gains.kp);
    CHECK(a.gains.kd == b.gains.kd);
  }
}

TEST_CASE("validation totality: single-record load agrees with validate_record") {
  // A record rejected by validate_record is rejected by load and vice versa.
  const double kp_values[] = {9.0, 10.0, 35.0, 60.0, 61.0};
  const double kd_values[] = {0.05, 0.1, 1.0, 2.0, 2.4};
  for (double kp : kp_values) {
    for (double kd : kd_values) {
      const auto rec = make_record("probe", kp, kd);
      db::ScenarioDatabase database;
      database.records.push_back(rec);
      const std::string csv = db::serialize_database(database);
      const bool record_ok = db::validate_record(rec).ok();
      bool load_ok = true;
      try {
        db::parse_database_csv(csv, "mem");
      } catch (const ValidationError&) {
        load_ok = false;
      }
      CHECK(record_ok == load_ok);
    }
  }
}

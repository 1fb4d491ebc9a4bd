// Regenerates the seed scenario database from data/seed_scenarios.json.
// Each entry carries the raw scene descriptor the scenario was encoded from
// plus base Kp/Kd levels; per-joint gains scale the base by a fixed
// shoulder-to-wrist profile and the stored description is the canonical
// query text of the normalized descriptor, exactly as produced at runtime.

#include <cmath>
#include <iostream>

#include <json.hpp>

#include "gainsched/core/errors.hpp"
#include "gainsched/core/strings.hpp"
#include "gainsched/db/scenario_db.hpp"
#include "gainsched/perception/descriptor.hpp"

using namespace gainsched;

namespace {

// Proportional profile over one arm, shoulder to wrist.
constexpr std::array<double, kArmJoints> kJointShape = {1.08, 1.06, 1.00, 1.00,
                                                        0.92, 0.88, 0.85};

double round2(double v) { return std::round(v * 100.0) / 100.0; }

}  // namespace

int main(int argc, char** argv) {
  if (argc != 4) {
    std::cerr << "usage: make_seed_db <seed_scenarios.json> "
              << "<normalization.json> <out.csv>\n";
    return 2;
  }
  try {
    const auto table = percept::NormalizationTable::load(argv[2]);
    const auto spec = nlohmann::json::parse(str::read_file(argv[1]));

    db::ScenarioDatabase database;
    for (const auto& entry : spec.at("scenarios")) {
      ScenarioRecord rec;
      rec.scenario_id = entry.at("scenario_id").get<std::string>();
      const auto descriptor =
          percept::parse_descriptor(entry.at("descriptor").dump());
      const auto normalized = percept::normalize(table, descriptor);
      rec.task = normalized.task;
      rec.main_object = normalized.main_object;
      rec.fragility = normalized.fragility;
      rec.human_presence = normalized.human_presence;
      if (!speed_from_string(entry.at("nominal_v").get<std::string>(),
                             rec.nominal_v))
        throw ConfigError(rec.scenario_id + ": bad nominal_v");
      rec.description = percept::to_query_text(normalized);

      const double kp_base = entry.at("kp_base").get<double>();
      const double kd_base = entry.at("kd_base").get<double>();
      rec.gains.kp.resize(kNumJoints);
      rec.gains.kd.resize(kNumJoints);
      for (std::size_t j = 0; j < kNumJoints; ++j) {
        const double shape = kJointShape[j % kArmJoints];
        rec.gains.kp[j] = round2(kp_base * shape);
        rec.gains.kd[j] = round2(kd_base * shape);
      }
      const auto report = db::validate_record(rec);
      if (!report.ok())
        throw ValidationError(rec.scenario_id + ": generated record invalid: " +
                              report.findings.front().message);
      database.records.push_back(std::move(rec));
    }

    str::write_file(argv[3], db::serialize_database(database));
    std::cout << "wrote " << database.records.size() << " records to "
              << argv[3] << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
}

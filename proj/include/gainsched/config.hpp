#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "gainsched/comms/client.hpp"
#include "gainsched/pipeline.hpp"
#include "gainsched/retrieval/retrieval.hpp"
#include "gainsched/safety/guards.hpp"
#include "gainsched/sim/runner.hpp"

namespace gainsched {

/// One structured config file; CLI flags override file values, file values
/// override defaults. Relative paths resolve against the config file's
/// directory.
struct RunConfig {
  std::string db_path = "data/scenario_db.csv";
  std::string model_path = "data/arm_model.json";
  std::string normalization_path = "data/normalization.json";
  std::string mock_vlm_path = "data/mock_vlm.json";

  retrieval::RetrievalConfig retrieval;
  safety::SafetyLimits safety;
  comms::FreshnessPolicy comms;
  double slew_duration_s = 0.3;
  double friction = 0.1;
  std::string embedder = "hash";
  std::string host = "127.0.0.1";
  int port = 17430;
  std::uint64_t seed = 0;

  static RunConfig load(const std::string& path);
  static RunConfig parse(const std::string& json_text,
                         const std::string& source);

  /// Range checks; throws ConfigError.
  void validate() const;

  sim::SimParams sim_params() const;
};

std::shared_ptr<Pipeline> build_pipeline(const RunConfig& cfg);

}  // namespace gainsched

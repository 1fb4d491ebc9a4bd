#pragma once

#include <string>

#include "gainsched/comms/client.hpp"
#include "gainsched/pipeline.hpp"
#include "gainsched/sim/log.hpp"
#include "gainsched/sim/plant.hpp"
#include "gainsched/sim/script.hpp"

namespace gainsched::sim {

struct SimParams {
  comms::FreshnessPolicy policy;
  double slew_duration = 0.3;
  double friction = 0.1;
  kin::IkWeights ik_weights;
};

struct RunOptions {
  enum class Transport { in_process, tcp };
  Transport transport = Transport::in_process;
  std::string server_host = "127.0.0.1";
  int server_port = 0;
  /// Pace ticks against the wall clock (TCP mode runs paced; the in-process
  /// mode always uses the pure simulated clock).
  bool realtime = false;
};

/// Plays a scripted timeline against the retrieval pipeline and the
/// simulated plant. In-process transport runs on a simulated clock with
/// deterministic reply delivery; TCP transport talks to a live server.
RunLog run_scenario(const ScenarioScript& script, const Pipeline& pipeline,
                    const kin::ArmModel& model, const SimParams& params,
                    const RunOptions& options = {});

}  // namespace gainsched::sim

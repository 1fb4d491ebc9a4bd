#pragma once

#include <optional>

#include "gainsched/core/types.hpp"
#include "gainsched/perception/descriptor.hpp"

namespace gainsched::safety {

/// Speed-and-separation monitoring parameters: protective distance is the
/// distance a human can cover before the system has fully stopped, plus an
/// intrusion allowance.
struct SsmParams {
  double approach_speed_mm_s = 1600.0;  // K
  double stop_time_s = 0.5;             // T
  double intrusion_mm = 100.0;          // C
};

/// S = K*T + C, in mm.
double protective_distance_mm(const SsmParams& p);

struct SafetyLimits {
  double fragile_kp_cap = 30.0;             // within [kKpMin, kKpMax]
  Speed human_present_max_v = Speed::slow;
  double min_separation_for_normal_v_mm = 1500.0;
  SsmParams ssm;
};

/// Clamps any payload to the scene's safety envelope before execution:
/// fragile scenes cap every Kp; a visible hand or a separation below the
/// protective distance caps nominal speed; a separation too small for full
/// speed caps it at mid. Kd is never decreased. Total and idempotent.
ImpedancePayload apply_guards(const ImpedancePayload& payload,
                              const percept::NormalizedDescriptor& scene,
                              std::optional<double> separation_mm,
                              const SafetyLimits& limits);

}  // namespace gainsched::safety

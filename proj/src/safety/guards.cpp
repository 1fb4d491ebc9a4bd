#include "gainsched/safety/guards.hpp"

#include <algorithm>

namespace gainsched::safety {

double protective_distance_mm(const SsmParams& p) {
  return p.approach_speed_mm_s * p.stop_time_s + p.intrusion_mm;
}

namespace {

inline Speed min_speed(Speed a, Speed b) {
  return static_cast<int>(a) <= static_cast<int>(b) ? a : b;
}

}  // namespace

ImpedancePayload apply_guards(const ImpedancePayload& payload,
                              const percept::NormalizedDescriptor& scene,
                              std::optional<double> separation_mm,
                              const SafetyLimits& limits) {
  ImpedancePayload out = payload;

  if (scene.fragility == Fragility::fragile) {
    for (double& kp : out.kp) kp = std::min(kp, limits.fragile_kp_cap);
  }

  const bool hand_visible = scene.human_presence == HumanPresence::hand_visible;
  const bool too_close =
      separation_mm && *separation_mm < protective_distance_mm(limits.ssm);
  if (hand_visible || too_close)
    out.nominal_v = min_speed(out.nominal_v, limits.human_present_max_v);

  if (separation_mm && *separation_mm < limits.min_separation_for_normal_v_mm)
    out.nominal_v = min_speed(out.nominal_v, Speed::mid);

  return out;
}

}  // namespace gainsched::safety

#pragma once

#include <Eigen/Dense>

#include "gainsched/core/types.hpp"
#include "gainsched/kinematics/kinematics.hpp"

namespace gainsched::impedance {

struct JointState {
  JointVector q{};
  JointVector qd{};
};

/// Per-joint command set executed by the 50 Hz loop.
struct JointCommandSet {
  JointVector q_ref{};
  JointVector qd_ref{};
  JointVector tau_ff{};
  JointVector kp{};
  JointVector kd{};
};

/// tau = Kp (q_ref - q) + Kd (qd_ref - qd) + tau_ff, element-wise.
JointVector impedance_torque(const JointCommandSet& cmd, const JointState& state);

/// Maps arm torques to the equivalent end-effector wrench: the least-squares
/// solution F of J^T F = tau. Throws DegenerateConfigError when the Jacobian
/// condition number exceeds 1e6.
Eigen::Matrix<double, 6, 1> force_map(const kin::ArmModel& model,
                                      const JointVector& q,
                                      const std::array<double, kArmJoints>& tau_arm,
                                      kin::Side side);

inline constexpr double kForceMapMaxCondition = 1e6;

/// Maximally conservative profile: minimum stiffness, maximum damping,
/// slowest speed.
ImpedancePayload fallback_payload();

/// Ramps the active payload toward a new target over a fixed slew duration.
/// Gains interpolate linearly; the discrete speed (and metadata) switch at
/// the midpoint; once the ramp completes the target becomes active.
class GainScheduler {
 public:
  explicit GainScheduler(ImpedancePayload initial, double slew_duration = 0.3);

  void set_target(const ImpedancePayload& target);

  /// Advances by dt and returns the effective payload.
  ImpedancePayload step(double dt);

  /// Effective payload at the current ramp position (no time advance).
  ImpedancePayload current() const;

  const ImpedancePayload& target() const { return target_; }
  const ImpedancePayload& active() const { return active_; }
  bool slewing() const { return slewing_; }
  double slew_duration() const { return slew_duration_; }

 private:
  ImpedancePayload interpolate(double t) const;

  ImpedancePayload active_;
  ImpedancePayload target_;
  double slew_duration_;
  double elapsed_ = 0.0;
  bool slewing_ = false;
};

}  // namespace gainsched::impedance

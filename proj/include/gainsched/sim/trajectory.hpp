#pragma once

#include <optional>

#include "gainsched/kinematics/kinematics.hpp"

namespace gainsched::sim {

/// Minimum-jerk point-to-point reference in joint space between IK
/// solutions, time-scaled so the peak end-effector speed stays at the
/// commanded nominal speed. Holds position when no target is active.
class TrajectoryGenerator {
 public:
  TrajectoryGenerator(const kin::ArmModel& model, const JointVector& q_start,
                      const kin::IkWeights& weights);

  /// Plans a move from the current reference to IK(targets) at `speed_mps`.
  void set_target(const std::pair<kin::Pose6D, kin::Pose6D>& targets,
                  double speed_mps, double now);

  /// Re-times the remaining motion when the commanded speed changes.
  void set_speed(double speed_mps, double now);

  struct Reference {
    JointVector q{};
    JointVector qd{};
  };
  Reference sample(double now) const;

  bool moving(double now) const;

 private:
  void plan(const JointVector& from, double now);

  const kin::ArmModel* model_;
  kin::IkWeights weights_;
  JointVector q_from_{};
  JointVector q_goal_{};
  std::optional<std::pair<kin::Pose6D, kin::Pose6D>> targets_;
  double t_start_ = 0.0;
  double duration_ = 0.0;
  double speed_mps_ = 0.05;
};

}  // namespace gainsched::sim

#include "gainsched/sim/trajectory.hpp"

#include <algorithm>
#include <cmath>

namespace gainsched::sim {

namespace {

// Peak of the minimum-jerk speed profile relative to average speed.
constexpr double kMinJerkPeakFactor = 1.875;
constexpr double kMinMoveDuration = 0.5;

}  // namespace

TrajectoryGenerator::TrajectoryGenerator(const kin::ArmModel& model,
                                         const JointVector& q_start,
                                         const kin::IkWeights& weights)
    : model_(&model), weights_(weights), q_from_(q_start), q_goal_(q_start) {}

void TrajectoryGenerator::plan(const JointVector& from, double now) {
  q_from_ = from;
  if (!targets_) {
    q_goal_ = from;
    duration_ = 0.0;
    return;
  }
  const auto ik = kin::solve_ik(*model_, *targets_, from, weights_);
  q_goal_ = ik.q_ref;

  const auto [ee_from_l, ee_from_r] = kin::forward_kinematics(*model_, from);
  const auto [ee_goal_l, ee_goal_r] = kin::forward_kinematics(*model_, q_goal_);
  const double dist =
      std::max((ee_goal_l.position - ee_from_l.position).norm(),
               (ee_goal_r.position - ee_from_r.position).norm());
  duration_ =
      std::max(kMinJerkPeakFactor * dist / std::max(speed_mps_, 1e-6),
               kMinMoveDuration);
  t_start_ = now;
}

void TrajectoryGenerator::set_target(
    const std::pair<kin::Pose6D, kin::Pose6D>& targets, double speed_mps,
    double now) {
  const Reference here = sample(now);
  speed_mps_ = speed_mps;
  targets_ = targets;
  plan(here.q, now);
}

void TrajectoryGenerator::set_speed(double speed_mps, double now) {
  if (speed_mps == speed_mps_) return;
  const bool was_moving = moving(now);
  speed_mps_ = speed_mps;
  if (was_moving) plan(sample(now).q, now);  // re-time the remaining motion
}

bool TrajectoryGenerator::moving(double now) const {
  return duration_ > 0.0 && now - t_start_ < duration_;
}

TrajectoryGenerator::Reference TrajectoryGenerator::sample(double now) const {
  Reference ref;
  if (duration_ <= 0.0 || now >= t_start_ + duration_) {
    ref.q = q_goal_;
    return ref;  // holding: zero reference velocity
  }
  const double tau = std::clamp((now - t_start_) / duration_, 0.0, 1.0);
  const double s = tau * tau * tau * (10.0 + tau * (-15.0 + 6.0 * tau));
  const double sd =
      tau * tau * (30.0 + tau * (-60.0 + 30.0 * tau)) / duration_;
  for (std::size_t i = 0; i < kNumJoints; ++i) {
    const double span = q_goal_[i] - q_from_[i];
    ref.q[i] = q_from_[i] + span * s;
    ref.qd[i] = span * sd;
  }
  return ref;
}

}  // namespace gainsched::sim

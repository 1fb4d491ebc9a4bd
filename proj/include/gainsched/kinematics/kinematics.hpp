#pragma once

#include <Eigen/Dense>
#include <Eigen/Geometry>
#include <array>
#include <span>
#include <string>
#include <vector>

#include "gainsched/core/types.hpp"

namespace gainsched::kin {

struct Pose6D {
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  Eigen::Quaterniond orientation = Eigen::Quaterniond::Identity();
};

enum class Side { left, right };

struct JointSpec {
  std::string name;
  Eigen::Vector3d axis;       // unit rotation axis in the joint's own frame
  Eigen::Vector3d offset;     // translation from the parent frame
  double mass = 0.0;          // link mass carried by this joint
  Eigen::Vector3d com;        // link COM in the joint frame
  double limit_lower = -3.0;  // rad
  double limit_upper = 3.0;
};

/// One serial chain rooted at the torso frame. Frame i applies the fixed
/// offset, then the rotation about axis by q[i]; the tool point hangs off
/// the last frame.
struct Chain {
  std::vector<JointSpec> joints;
  Eigen::Vector3d tool = Eigen::Vector3d::Zero();
};

struct ChainState {
  std::vector<Eigen::Vector3d> joint_positions;   // frame origins, world
  std::vector<Eigen::Matrix3d> joint_rotations;   // frame orientations, world
  std::vector<Eigen::Vector3d> com_positions;     // link COMs, world
  Eigen::Vector3d tool_position;
  Eigen::Matrix3d tool_rotation;
};

ChainState chain_fk(const Chain& chain, std::span<const double> q);
Pose6D chain_tool_pose(const Chain& chain, std::span<const double> q);

/// Geometric Jacobian of the tool point, rows 0-2 linear / 3-5 angular,
/// world frame.
Eigen::Matrix<double, 6, Eigen::Dynamic> chain_jacobian(
    const Chain& chain, std::span<const double> q);

/// Static gravity load torque per joint (the torque the actuators must apply
/// to hold q), via the Newton-Euler backward pass with zero joint motion.
/// Equals the gradient of total potential energy w.r.t. q.
Eigen::VectorXd chain_gravity_torques(const Chain& chain,
                                      std::span<const double> q,
                                      const Eigen::Vector3d& gravity);

double chain_potential_energy(const Chain& chain, std::span<const double> q,
                              const Eigen::Vector3d& gravity);

/// 14-joint dual-arm model: two 7-joint chains from a fixed torso frame.
struct ArmModel {
  Chain left;
  Chain right;
  Eigen::Vector3d gravity{0.0, 0.0, -9.81};
  double inertia_floor = 0.05;  // kg*m^2, lower bound on lumped inertia
  JointVector home{};           // posture the IK regularizes toward

  static ArmModel load(const std::string& path);
  static ArmModel parse(const std::string& json_text, const std::string& source);

  const Chain& chain(Side s) const { return s == Side::left ? left : right; }

  /// Lumped per-joint inertia about each joint axis at the home posture,
  /// floored at inertia_floor. Used by the simulation plant.
  JointVector lumped_inertias() const;
};

std::pair<Pose6D, Pose6D> forward_kinematics(const ArmModel& model,
                                             const JointVector& q);

Eigen::Matrix<double, 6, 7> jacobian(const ArmModel& model,
                                     const JointVector& q, Side side);

JointVector gravity_torques(const ArmModel& model, const JointVector& q);

double potential_energy(const ArmModel& model, const JointVector& q);

struct IkWeights {
  double w_trans = 1.0;
  double w_rot = 0.5;
  double w_reg = 1e-3;
  double w_smooth = 1e-2;
};

struct IkResult {
  JointVector q_ref{};
  double residual = 0.0;  // weighted task residual at the returned q
  int iterations = 0;
  bool converged = false;
};

/// Damped Gauss-Newton descent on the weighted translation/rotation residual
/// plus home-regularization and smoothness anchors. Accepted steps never
/// increase the cost (backtracking line search); joint limits enforced by
/// clamping. Non-convergence is reported through the residual, not an error.
IkResult solve_ik(const ArmModel& model,
                  const std::pair<Pose6D, Pose6D>& targets,
                  const JointVector& q_prev, const IkWeights& weights,
                  double tol = 1e-5, int max_iters = 200);

/// Rotation-vector (log map) of the error rotation taking `from` to `to`.
Eigen::Vector3d orientation_error(const Eigen::Quaterniond& to,
                                  const Eigen::Quaterniond& from);

}  // namespace gainsched::kin

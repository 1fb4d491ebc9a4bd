#include "gainsched/kinematics/kinematics.hpp"

#include <algorithm>
#include <cmath>

#include "gainsched/core/errors.hpp"

namespace gainsched::kin {

ChainState chain_fk(const Chain& chain, std::span<const double> q) {
  if (q.size() != chain.joints.size())
    throw ContractError("chain_fk: q has " + std::to_string(q.size()) +
                        " entries for a " +
                        std::to_string(chain.joints.size()) + "-joint chain");
  ChainState st;
  const std::size_t n = chain.joints.size();
  st.joint_positions.resize(n);
  st.joint_rotations.resize(n);
  st.com_positions.resize(n);

  Eigen::Vector3d p = Eigen::Vector3d::Zero();
  Eigen::Matrix3d r = Eigen::Matrix3d::Identity();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& jt = chain.joints[i];
    p += r * jt.offset;
    r = r * Eigen::AngleAxisd(q[i], jt.axis).toRotationMatrix();
    st.joint_positions[i] = p;
    st.joint_rotations[i] = r;
    st.com_positions[i] = p + r * jt.com;
  }
  st.tool_position = p + r * chain.tool;
  st.tool_rotation = r;
  return st;
}

Pose6D chain_tool_pose(const Chain& chain, std::span<const double> q) {
  const ChainState st = chain_fk(chain, q);
  Pose6D pose;
  pose.position = st.tool_position;
  pose.orientation = Eigen::Quaterniond(st.tool_rotation).normalized();
  if (pose.orientation.w() < 0.0) pose.orientation.coeffs() *= -1.0;
  return pose;
}

Eigen::Matrix<double, 6, Eigen::Dynamic> chain_jacobian(
    const Chain& chain, std::span<const double> q) {
  const ChainState st = chain_fk(chain, q);
  const std::size_t n = chain.joints.size();
  Eigen::Matrix<double, 6, Eigen::Dynamic> jac(6, n);
  for (std::size_t i = 0; i < n; ++i) {
    // World-frame joint axis: the rotation about axis i is applied inside
    // frame i, so the axis is fixed in the frame of the *previous* rotation.
    const Eigen::Matrix3d r_before =
        i == 0 ? Eigen::Matrix3d::Identity()
               : st.joint_rotations[i - 1];
    const Eigen::Vector3d z = r_before * chain.joints[i].axis;
    const Eigen::Vector3d lever = st.tool_position - st.joint_positions[i];
    jac.block<3, 1>(0, i) = z.cross(lever);
    jac.block<3, 1>(3, i) = z;
  }
  return jac;
}

Eigen::VectorXd chain_gravity_torques(const Chain& chain,
                                      std::span<const double> q,
                                      const Eigen::Vector3d& gravity) {
  const ChainState st = chain_fk(chain, q);
  const std::size_t n = chain.joints.size();
  const Eigen::Vector3d base_acc = -gravity;

  // Backward pass, zero velocities/accelerations: accumulate the child
  // wrench expressed about each joint origin.
  Eigen::VectorXd tau(n);
  Eigen::Vector3d f = Eigen::Vector3d::Zero();
  Eigen::Vector3d moment = Eigen::Vector3d::Zero();
  Eigen::Vector3d child_origin = Eigen::Vector3d::Zero();
  for (std::size_t k = n; k-- > 0;) {
    const Eigen::Vector3d link_force = chain.joints[k].mass * base_acc;
    Eigen::Vector3d n_k = moment;
    if (k + 1 < n) n_k += (child_origin - st.joint_positions[k]).cross(f);
    n_k += (st.com_positions[k] - st.joint_positions[k]).cross(link_force);
    f += link_force;
    moment = n_k;
    child_origin = st.joint_positions[k];

    const Eigen::Matrix3d r_before =
        k == 0 ? Eigen::Matrix3d::Identity() : st.joint_rotations[k - 1];
    tau[static_cast<Eigen::Index>(k)] =
        (r_before * chain.joints[k].axis).dot(n_k);
  }
  return tau;
}

double chain_potential_energy(const Chain& chain, std::span<const double> q,
                              const Eigen::Vector3d& gravity) {
  const ChainState st = chain_fk(chain, q);
  double u = 0.0;
  for (std::size_t i = 0; i < chain.joints.size(); ++i)
    u -= chain.joints[i].mass * gravity.dot(st.com_positions[i]);
  return u;
}

std::pair<Pose6D, Pose6D> forward_kinematics(const ArmModel& model,
                                             const JointVector& q) {
  return {chain_tool_pose(model.left, std::span(q.data(), kArmJoints)),
          chain_tool_pose(model.right,
                          std::span(q.data() + kArmJoints, kArmJoints))};
}

Eigen::Matrix<double, 6, 7> jacobian(const ArmModel& model,
                                     const JointVector& q, Side side) {
  const std::size_t off = side == Side::left ? 0 : kArmJoints;
  return chain_jacobian(model.chain(side), std::span(q.data() + off, kArmJoints));
}

JointVector gravity_torques(const ArmModel& model, const JointVector& q) {
  JointVector tau{};
  const Eigen::VectorXd tl = chain_gravity_torques(
      model.left, std::span(q.data(), kArmJoints), model.gravity);
  const Eigen::VectorXd tr = chain_gravity_torques(
      model.right, std::span(q.data() + kArmJoints, kArmJoints), model.gravity);
  for (std::size_t i = 0; i < kArmJoints; ++i) {
    tau[i] = tl[static_cast<Eigen::Index>(i)];
    tau[i + kArmJoints] = tr[static_cast<Eigen::Index>(i)];
  }
  return tau;
}

double potential_energy(const ArmModel& model, const JointVector& q) {
  return chain_potential_energy(model.left, std::span(q.data(), kArmJoints),
                                model.gravity) +
         chain_potential_energy(model.right,
                                std::span(q.data() + kArmJoints, kArmJoints),
                                model.gravity);
}

Eigen::Vector3d orientation_error(const Eigen::Quaterniond& to,
                                  const Eigen::Quaterniond& from) {
  Eigen::Quaterniond err = to * from.conjugate();
  if (err.w() < 0.0) err.coeffs() *= -1.0;
  const Eigen::Vector3d v = err.vec();
  const double norm_v = v.norm();
  if (norm_v < 1e-12) return 2.0 * v;
  return (2.0 * std::atan2(norm_v, err.w())) * (v / norm_v);
}

namespace {

struct ChainIk {
  Eigen::VectorXd q;
  double task_residual_sq = 0.0;
  int iterations = 0;
  bool converged = false;
};

Eigen::VectorXd clamp_to_limits(const Chain& chain, Eigen::VectorXd q) {
  for (Eigen::Index i = 0; i < q.size(); ++i) {
    const auto& jt = chain.joints[static_cast<std::size_t>(i)];
    q[i] = std::clamp(q[i], jt.limit_lower, jt.limit_upper);
  }
  return q;
}

ChainIk solve_chain_ik(const Chain& chain, const Pose6D& target,
                       const Eigen::VectorXd& q_prev,
                       const Eigen::VectorXd& q_home, const IkWeights& w,
                       double tol, int max_iters) {
  constexpr double kDamping = 1e-4;
  const auto n = static_cast<Eigen::Index>(chain.joints.size());

  auto task_residual_sq = [&](const Eigen::VectorXd& q) {
    const Pose6D pose = chain_tool_pose(chain, std::span(q.data(), q.size()));
    const Eigen::Vector3d ep = target.position - pose.position;
    const Eigen::Vector3d er = orientation_error(target.orientation, pose.orientation);
    return w.w_trans * ep.squaredNorm() + w.w_rot * er.squaredNorm();
  };
  auto cost = [&](const Eigen::VectorXd& q) {
    return task_residual_sq(q) + w.w_reg * (q - q_home).squaredNorm() +
           w.w_smooth * (q - q_prev).squaredNorm();
  };

  ChainIk out;
  out.q = clamp_to_limits(chain, q_prev);
  double current_cost = cost(out.q);

  for (int iter = 0; iter < max_iters; ++iter) {
    out.iterations = iter;
    out.task_residual_sq = task_residual_sq(out.q);
    if (std::sqrt(out.task_residual_sq) < tol) {
      out.converged = true;
      return out;
    }

    const Pose6D pose =
        chain_tool_pose(chain, std::span(out.q.data(), out.q.size()));
    const Eigen::Vector3d ep = target.position - pose.position;
    const Eigen::Vector3d er =
        orientation_error(target.orientation, pose.orientation);
    const auto jac = chain_jacobian(chain, std::span(out.q.data(), out.q.size()));
    const auto jp = jac.topRows<3>();
    const auto jr = jac.bottomRows<3>();

    Eigen::MatrixXd h = w.w_trans * jp.transpose() * jp +
                        w.w_rot * jr.transpose() * jr;
    h.diagonal().array() += w.w_reg + w.w_smooth + kDamping;
    const Eigen::VectorXd g = w.w_trans * jp.transpose() * ep +
                              w.w_rot * jr.transpose() * er +
                              w.w_reg * (q_home - out.q) +
                              w.w_smooth * (q_prev - out.q);
    const Eigen::VectorXd dq = h.ldlt().solve(g);

    double alpha = 1.0;
    bool accepted = false;
    for (int bt = 0; bt < 20; ++bt) {
      const Eigen::VectorXd candidate =
          clamp_to_limits(chain, out.q + alpha * dq);
      const double c = cost(candidate);
      if (c < current_cost) {
        out.q = candidate;
        current_cost = c;
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) break;  // descent stalled; report the residual we have
  }
  out.task_residual_sq = task_residual_sq(out.q);
  out.converged = std::sqrt(out.task_residual_sq) < tol;
  return out;
}

bool pose_finite(const Pose6D& p) {
  return p.position.allFinite() && p.orientation.coeffs().allFinite();
}

}  // namespace

IkResult solve_ik(const ArmModel& model,
                  const std::pair<Pose6D, Pose6D>& targets,
                  const JointVector& q_prev, const IkWeights& weights,
                  double tol, int max_iters) {
  if (!pose_finite(targets.first) || !pose_finite(targets.second))
    throw ContractError("solve_ik: non-finite target pose");
  if (!(weights.w_trans > 0.0))
    throw ContractError("solve_ik: w_trans must be positive");

  Eigen::VectorXd prev_l(kArmJoints), prev_r(kArmJoints);
  Eigen::VectorXd home_l(kArmJoints), home_r(kArmJoints);
  for (std::size_t i = 0; i < kArmJoints; ++i) {
    prev_l[static_cast<Eigen::Index>(i)] = q_prev[i];
    prev_r[static_cast<Eigen::Index>(i)] = q_prev[i + kArmJoints];
    home_l[static_cast<Eigen::Index>(i)] = model.home[i];
    home_r[static_cast<Eigen::Index>(i)] = model.home[i + kArmJoints];
  }

  const ChainIk left = solve_chain_ik(model.left, targets.first, prev_l,
                                      home_l, weights, tol, max_iters);
  const ChainIk right = solve_chain_ik(model.right, targets.second, prev_r,
                                       home_r, weights, tol, max_iters);

  IkResult result;
  for (std::size_t i = 0; i < kArmJoints; ++i) {
    result.q_ref[i] = left.q[static_cast<Eigen::Index>(i)];
    result.q_ref[i + kArmJoints] = right.q[static_cast<Eigen::Index>(i)];
  }
  result.residual =
      std::sqrt(left.task_residual_sq + right.task_residual_sq);
  result.iterations = std::max(left.iterations, right.iterations);
  result.converged = left.converged && right.converged;
  return result;
}

}  // namespace gainsched::kin

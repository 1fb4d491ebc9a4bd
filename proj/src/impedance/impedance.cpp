#include "gainsched/impedance/impedance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gainsched/core/errors.hpp"
#include "gainsched/kernels/kernels.hpp"

namespace gainsched::impedance {

namespace {

bool all_finite(const JointVector& v) {
  return std::all_of(v.begin(), v.end(),
                     [](double x) { return std::isfinite(x); });
}

}  // namespace

JointVector impedance_torque(const JointCommandSet& cmd,
                             const JointState& state) {
  if (!all_finite(cmd.q_ref) || !all_finite(cmd.qd_ref) ||
      !all_finite(cmd.tau_ff) || !all_finite(cmd.kp) || !all_finite(cmd.kd) ||
      !all_finite(state.q) || !all_finite(state.qd))
    throw ContractError("impedance_torque: non-finite input");

  JointVector tau{};
  kernels::pd_torque(cmd.kp.data(), cmd.kd.data(), cmd.q_ref.data(),
                     state.q.data(), cmd.qd_ref.data(), state.qd.data(),
                     cmd.tau_ff.data(), tau.data(), kNumJoints);
  return tau;
}

Eigen::Matrix<double, 6, 1> force_map(
    const kin::ArmModel& model, const JointVector& q,
    const std::array<double, kArmJoints>& tau_arm, kin::Side side) {
  const Eigen::Matrix<double, 6, 7> jac = kin::jacobian(model, q, side);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(
      jac, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sigma = svd.singularValues();
  const double smin = sigma[sigma.size() - 1];
  const double cond =
      smin > 0.0 ? sigma[0] / smin : std::numeric_limits<double>::infinity();
  if (!(cond < kForceMapMaxCondition))
    throw DegenerateConfigError(
        "force_map: Jacobian condition number " + std::to_string(cond) +
            " exceeds " + std::to_string(kForceMapMaxCondition),
        cond);

  Eigen::Matrix<double, 7, 1> tau;
  for (std::size_t i = 0; i < kArmJoints; ++i)
    tau[static_cast<Eigen::Index>(i)] = tau_arm[i];

  // J = U S V^T  =>  argmin_F ||J^T F - tau|| = U S^-1 V^T tau.
  const Eigen::VectorXd vt_tau = svd.matrixV().transpose() * tau;
  Eigen::VectorXd scaled(sigma.size());
  for (Eigen::Index i = 0; i < sigma.size(); ++i)
    scaled[i] = vt_tau[i] / sigma[i];
  return svd.matrixU() * scaled;
}

ImpedancePayload fallback_payload() {
  ImpedancePayload p;
  p.kp.fill(kKpMin);
  p.kd.fill(kKdMax);
  p.nominal_v = Speed::slow;
  p.scenario_id = "fallback";
  p.reason = PayloadReason::fallback;
  return p;
}

GainScheduler::GainScheduler(ImpedancePayload initial, double slew_duration)
    : active_(std::move(initial)),
      target_(active_),
      slew_duration_(slew_duration) {}

void GainScheduler::set_target(const ImpedancePayload& target) {
  if (target == target_) return;
  active_ = current();
  target_ = target;
  elapsed_ = 0.0;
  slewing_ = !(active_ == target_);
  if (slew_duration_ <= 0.0 && slewing_) {
    active_ = target_;
    slewing_ = false;
  }
}

ImpedancePayload GainScheduler::interpolate(double t) const {
  ImpedancePayload out = t < 0.5 ? active_ : target_;  // v + metadata switch
  kernels::lerp(active_.kp.data(), target_.kp.data(), t, out.kp.data(),
                kNumJoints);
  kernels::lerp(active_.kd.data(), target_.kd.data(), t, out.kd.data(),
                kNumJoints);
  return out;
}

ImpedancePayload GainScheduler::step(double dt) {
  if (!slewing_) return active_;
  if (dt < 0.0) throw ContractError("GainScheduler::step: dt must be >= 0");
  elapsed_ += dt;
  if (elapsed_ >= slew_duration_) {
    active_ = target_;
    slewing_ = false;
    return active_;
  }
  return interpolate(elapsed_ / slew_duration_);
}

ImpedancePayload GainScheduler::current() const {
  if (!slewing_) return active_;
  if (elapsed_ >= slew_duration_) return target_;
  return interpolate(elapsed_ / slew_duration_);
}

}  // namespace gainsched::impedance

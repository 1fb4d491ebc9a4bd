#include "gainsched/sim/plant.hpp"

#include <cmath>

#include "gainsched/core/errors.hpp"

namespace gainsched::sim {

Plant::Plant(const kin::ArmModel& m, double friction_coeff)
    : model(&m), inertia(m.lumped_inertias()), friction(friction_coeff) {}

PlantState Plant::step(const PlantState& state, const JointVector& tau,
                       double dt) const {
  if (!(dt > 0.0)) throw ContractError("plant step needs dt > 0");
  for (double v : tau)
    if (!std::isfinite(v)) throw ContractError("plant step: non-finite torque");

  const JointVector tau_g = kin::gravity_torques(*model, state.q);
  PlantState next = state;
  for (std::size_t i = 0; i < kNumJoints; ++i) {
    const double qdd =
        (tau[i] - tau_g[i] - friction * state.qd[i]) / inertia[i];
    next.qd[i] = state.qd[i] + qdd * dt;
    next.q[i] = state.q[i] + next.qd[i] * dt;
  }
  next.t = state.t + dt;
  return next;
}

}  // namespace gainsched::sim

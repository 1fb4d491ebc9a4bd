#pragma once

#include "gainsched/core/types.hpp"
#include "gainsched/kinematics/kinematics.hpp"

namespace gainsched::sim {

inline constexpr double kControlDt = 0.02;  // 50 Hz

struct PlantState {
  JointVector q{};
  JointVector qd{};
  double t = 0.0;
};

/// Decoupled per-joint plant with gravity load and viscous friction:
///   qdd = (tau - tau_gravity(q) - b*qd) / I, semi-implicit Euler.
struct Plant {
  const kin::ArmModel* model = nullptr;
  JointVector inertia{};       // lumped, from ArmModel
  double friction = 0.1;       // N*m*s/rad

  Plant() = default;
  Plant(const kin::ArmModel& m, double friction_coeff);

  PlantState step(const PlantState& state, const JointVector& tau,
                  double dt) const;
};

}  // namespace gainsched::sim

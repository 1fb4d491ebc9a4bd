#include <json.hpp>

#include "gainsched/core/errors.hpp"
#include "gainsched/core/strings.hpp"
#include "gainsched/kinematics/kinematics.hpp"

namespace gainsched::kin {

using nlohmann::json;

namespace {

Eigen::Vector3d parse_vec3(const json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 3)
    throw ConfigError(what + " must be a 3-element array");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

Chain parse_chain(const json& j, const std::string& side,
                  const std::string& source) {
  Chain chain;
  if (!j.contains("joints") || !j["joints"].is_array())
    throw ConfigError(source + ": chain '" + side + "' needs a 'joints' array");
  for (const auto& jj : j["joints"]) {
    JointSpec spec;
    spec.name = jj.at("name").get<std::string>();
    spec.axis = parse_vec3(jj.at("axis"), source + ": " + spec.name + ".axis");
    const double axis_norm = spec.axis.norm();
    if (axis_norm < 1e-9)
      throw ConfigError(source + ": " + spec.name + " has a zero axis");
    spec.axis /= axis_norm;
    spec.offset =
        parse_vec3(jj.at("offset"), source + ": " + spec.name + ".offset");
    spec.mass = jj.at("mass").get<double>();
    if (!(spec.mass > 0.0))
      throw ConfigError(source + ": " + spec.name + " mass must be positive");
    spec.com = parse_vec3(jj.at("com"), source + ": " + spec.name + ".com");
    if (jj.contains("limits")) {
      const auto& lim = jj["limits"];
      if (!lim.is_array() || lim.size() != 2)
        throw ConfigError(source + ": " + spec.name + ".limits must be [lo, hi]");
      spec.limit_lower = lim[0].get<double>();
      spec.limit_upper = lim[1].get<double>();
      if (spec.limit_lower >= spec.limit_upper)
        throw ConfigError(source + ": " + spec.name + " has empty limit range");
    }
    chain.joints.push_back(std::move(spec));
  }
  if (j.contains("tool"))
    chain.tool = parse_vec3(j["tool"], source + ": " + side + ".tool");
  return chain;
}

}  // namespace

ArmModel ArmModel::parse(const std::string& json_text,
                         const std::string& source) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(source + ": " + e.what());
  }

  ArmModel model;
  model.left = parse_chain(j.at("left"), "left", source);
  model.right = parse_chain(j.at("right"), "right", source);
  if (model.left.joints.size() != kArmJoints ||
      model.right.joints.size() != kArmJoints)
    throw ConfigError(source + ": each arm must have exactly " +
                      std::to_string(kArmJoints) + " joints");
  if (j.contains("gravity"))
    model.gravity = parse_vec3(j["gravity"], source + ": gravity");
  if (j.contains("inertia_floor")) {
    model.inertia_floor = j["inertia_floor"].get<double>();
    if (!(model.inertia_floor > 0.0))
      throw ConfigError(source + ": inertia_floor must be positive");
  }
  model.home.fill(0.0);
  if (j.contains("home")) {
    const auto& h = j["home"];
    if (!h.is_array() || h.size() != kNumJoints)
      throw ConfigError(source + ": home must have 14 entries");
    for (std::size_t i = 0; i < kNumJoints; ++i)
      model.home[i] = h[i].get<double>();
  }
  return model;
}

ArmModel ArmModel::load(const std::string& path) {
  return parse(str::read_file(path), path);
}

JointVector ArmModel::lumped_inertias() const {
  JointVector inertia{};
  auto fill_chain = [&](const Chain& chain, std::size_t base) {
    std::array<double, kArmJoints> q_home{};
    for (std::size_t i = 0; i < kArmJoints; ++i) q_home[i] = home[base + i];
    const ChainState st = chain_fk(chain, std::span(q_home.data(), kArmJoints));
    for (std::size_t i = 0; i < chain.joints.size(); ++i) {
      const Eigen::Matrix3d r_before =
          i == 0 ? Eigen::Matrix3d::Identity() : st.joint_rotations[i - 1];
      const Eigen::Vector3d axis = r_before * chain.joints[i].axis;
      double sum = 0.0;
      for (std::size_t jj = i; jj < chain.joints.size(); ++jj) {
        const Eigen::Vector3d lever =
            st.com_positions[jj] - st.joint_positions[i];
        const Eigen::Vector3d perp = lever - lever.dot(axis) * axis;
        sum += chain.joints[jj].mass * perp.squaredNorm();
      }
      inertia[base + i] = std::max(sum, inertia_floor);
    }
  };
  fill_chain(left, 0);
  fill_chain(right, kArmJoints);
  return inertia;
}

}  // namespace gainsched::kin

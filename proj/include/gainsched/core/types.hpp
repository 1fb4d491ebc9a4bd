#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace gainsched {

inline constexpr std::size_t kNumJoints = 14;
inline constexpr std::size_t kArmJoints = 7;

// Published range of the validated gain database.
inline constexpr double kKpMin = 10.0;
inline constexpr double kKpMax = 60.0;
inline constexpr double kKdMin = 0.1;
inline constexpr double kKdMax = 2.0;

/// 14 reals in fixed joint order: left arm joints 0-6, right arm joints 7-13.
using JointVector = std::array<double, kNumJoints>;

enum class Speed : int { slow = 0, mid = 1, normal = 2 };

enum class Task { pick, handover, other };
enum class MainObject { cube, fruit, other };
enum class Fragility { fragile, non_fragile };
enum class HumanPresence { none, hand_visible };

const char* to_string(Speed v);
const char* to_string(Task t);
const char* to_string(MainObject o);
const char* to_string(Fragility f);
const char* to_string(HumanPresence h);

bool speed_from_string(const std::string& s, Speed& out);
bool task_from_string(const std::string& s, Task& out);
bool main_object_from_string(const std::string& s, MainObject& out);
bool fragility_from_string(const std::string& s, Fragility& out);
bool human_presence_from_string(const std::string& s, HumanPresence& out);

/// End-effector speed each discrete label maps to, in m/s.
double speed_to_mps(Speed v);

struct GainSet {
  std::vector<double> kp;  // expected length kNumJoints
  std::vector<double> kd;
};

struct ScenarioRecord {
  std::string scenario_id;
  Task task = Task::other;
  MainObject main_object = MainObject::other;
  Fragility fragility = Fragility::non_fragile;
  HumanPresence human_presence = HumanPresence::none;
  Speed nominal_v = Speed::slow;
  GainSet gains;
  std::string description;  // canonical query text stored at index-build time
};

enum class PayloadReason { ok, tie, low_confidence, empty_db, fallback };

const char* to_string(PayloadReason r);
bool payload_reason_from_string(const std::string& s, PayloadReason& out);

/// The 29-value command vector returned offboard -> onboard:
/// 14 Kp (left 0-6, right 0-6), 14 Kd (same order), 1 velocity code.
struct ImpedancePayload {
  std::array<double, kNumJoints> kp{};
  std::array<double, kNumJoints> kd{};
  Speed nominal_v = Speed::slow;
  std::string scenario_id;
  PayloadReason reason = PayloadReason::fallback;

  std::array<double, 29> flat() const;
  static ImpedancePayload from_flat(const std::array<double, 29>& v);

  bool same_gains(const ImpedancePayload& other) const;
};

bool operator==(const ImpedancePayload& a, const ImpedancePayload& b);

}  // namespace gainsched

#include "gainsched/core/types.hpp"

#include <algorithm>
#include <cmath>

#include "gainsched/core/errors.hpp"

namespace gainsched {

const char* to_string(Speed v) {
  switch (v) {
    case Speed::slow: return "slow";
    case Speed::mid: return "mid";
    case Speed::normal: return "normal";
  }
  return "?";
}

const char* to_string(Task t) {
  switch (t) {
    case Task::pick: return "pick";
    case Task::handover: return "handover";
    case Task::other: return "other";
  }
  return "?";
}

const char* to_string(MainObject o) {
  switch (o) {
    case MainObject::cube: return "cube";
    case MainObject::fruit: return "fruit";
    case MainObject::other: return "other";
  }
  return "?";
}

const char* to_string(Fragility f) {
  return f == Fragility::fragile ? "fragile" : "non_fragile";
}

const char* to_string(HumanPresence h) {
  return h == HumanPresence::none ? "none" : "hand_visible";
}

const char* to_string(PayloadReason r) {
  switch (r) {
    case PayloadReason::ok: return "ok";
    case PayloadReason::tie: return "tie";
    case PayloadReason::low_confidence: return "low_confidence";
    case PayloadReason::empty_db: return "empty_db";
    case PayloadReason::fallback: return "fallback";
  }
  return "?";
}

bool speed_from_string(const std::string& s, Speed& out) {
  if (s == "slow") out = Speed::slow;
  else if (s == "mid") out = Speed::mid;
  else if (s == "normal") out = Speed::normal;
  else return false;
  return true;
}

bool task_from_string(const std::string& s, Task& out) {
  if (s == "pick") out = Task::pick;
  else if (s == "handover") out = Task::handover;
  else if (s == "other") out = Task::other;
  else return false;
  return true;
}

bool main_object_from_string(const std::string& s, MainObject& out) {
  if (s == "cube") out = MainObject::cube;
  else if (s == "fruit") out = MainObject::fruit;
  else if (s == "other") out = MainObject::other;
  else return false;
  return true;
}

bool fragility_from_string(const std::string& s, Fragility& out) {
  if (s == "fragile") out = Fragility::fragile;
  else if (s == "non_fragile") out = Fragility::non_fragile;
  else return false;
  return true;
}

bool human_presence_from_string(const std::string& s, HumanPresence& out) {
  if (s == "none") out = HumanPresence::none;
  else if (s == "hand_visible") out = HumanPresence::hand_visible;
  else return false;
  return true;
}

bool payload_reason_from_string(const std::string& s, PayloadReason& out) {
  if (s == "ok") out = PayloadReason::ok;
  else if (s == "tie") out = PayloadReason::tie;
  else if (s == "low_confidence") out = PayloadReason::low_confidence;
  else if (s == "empty_db") out = PayloadReason::empty_db;
  else if (s == "fallback") out = PayloadReason::fallback;
  else return false;
  return true;
}

double speed_to_mps(Speed v) {
  switch (v) {
    case Speed::slow: return 0.05;
    case Speed::mid: return 0.15;
    case Speed::normal: return 0.25;
  }
  return 0.05;
}

std::array<double, 29> ImpedancePayload::flat() const {
  std::array<double, 29> out{};
  std::copy(kp.begin(), kp.end(), out.begin());
  std::copy(kd.begin(), kd.end(), out.begin() + kNumJoints);
  out[28] = static_cast<double>(static_cast<int>(nominal_v));
  return out;
}

ImpedancePayload ImpedancePayload::from_flat(const std::array<double, 29>& v) {
  ImpedancePayload p;
  std::copy(v.begin(), v.begin() + kNumJoints, p.kp.begin());
  std::copy(v.begin() + kNumJoints, v.begin() + 2 * kNumJoints, p.kd.begin());
  const double code = v[28];
  if (code != 0.0 && code != 1.0 && code != 2.0)
    throw ContractError("velocity code must be 0, 1 or 2, got " +
                        std::to_string(code));
  p.nominal_v = static_cast<Speed>(static_cast<int>(code));
  return p;
}

bool ImpedancePayload::same_gains(const ImpedancePayload& other) const {
  return kp == other.kp && kd == other.kd;
}

bool operator==(const ImpedancePayload& a, const ImpedancePayload& b) {
  return a.kp == b.kp && a.kd == b.kd && a.nominal_v == b.nominal_v &&
         a.scenario_id == b.scenario_id && a.reason == b.reason;
}

}  // namespace gainsched

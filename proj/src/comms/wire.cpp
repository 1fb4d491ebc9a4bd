#include "gainsched/comms/wire.hpp"

#include <cstring>

#include "gainsched/core/errors.hpp"

namespace gainsched::comms {

using nlohmann::json;

const char* to_string(MessageType t) {
  switch (t) {
    case MessageType::scene_query: return "scene_query";
    case MessageType::payload_reply: return "payload_reply";
    case MessageType::heartbeat: return "heartbeat";
    case MessageType::error: return "error";
  }
  return "?";
}

bool message_type_from_string(const std::string& s, MessageType& out) {
  if (s == "scene_query") out = MessageType::scene_query;
  else if (s == "payload_reply") out = MessageType::payload_reply;
  else if (s == "heartbeat") out = MessageType::heartbeat;
  else if (s == "error") out = MessageType::error;
  else return false;
  return true;
}

bool operator==(const WireMessage& a, const WireMessage& b) {
  return a.type == b.type && a.sequence == b.sequence &&
         a.timestamp_ms == b.timestamp_ms && a.body == b.body;
}

std::string encode(const WireMessage& msg) {
  json j;
  j["type"] = to_string(msg.type);
  j["sequence"] = msg.sequence;
  j["timestamp_ms"] = msg.timestamp_ms;
  j["body"] = msg.body;
  const std::string body = j.dump();
  if (body.size() > kMaxFrameBody)
    throw FramingError("frame body of " + std::to_string(body.size()) +
                       " bytes exceeds the " +
                       std::to_string(kMaxFrameBody) + "-byte limit");

  std::string out;
  out.reserve(4 + body.size());
  const auto len = static_cast<std::uint32_t>(body.size());
  out.push_back(static_cast<char>((len >> 24) & 0xff));
  out.push_back(static_cast<char>((len >> 16) & 0xff));
  out.push_back(static_cast<char>((len >> 8) & 0xff));
  out.push_back(static_cast<char>(len & 0xff));
  out += body;
  return out;
}

WireMessage decode_body(const std::string& body) {
  json j;
  try {
    j = json::parse(body);
  } catch (const json::exception& e) {
    throw WireParseError(std::string("frame body is not valid JSON: ") +
                         e.what());
  }
  WireMessage msg;
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
    throw WireParseError("frame body missing 'type'");
  if (!message_type_from_string(j["type"].get<std::string>(), msg.type))
    throw WireParseError("unknown message type '" +
                         j["type"].get<std::string>() + "'");
  if (!j.contains("sequence") || !j["sequence"].is_number_unsigned())
    throw WireParseError("frame body missing unsigned 'sequence'");
  msg.sequence = j["sequence"].get<std::uint64_t>();
  if (!j.contains("timestamp_ms") || !j["timestamp_ms"].is_number_integer())
    throw WireParseError("frame body missing integer 'timestamp_ms'");
  msg.timestamp_ms = j["timestamp_ms"].get<std::int64_t>();
  msg.body = j.contains("body") ? j["body"] : json(nullptr);
  return msg;
}

WireMessage decode(const std::string& frame) {
  if (frame.size() < 4)
    throw FramingError("truncated frame: " + std::to_string(frame.size()) +
                       " bytes, need at least 4");
  const auto b = reinterpret_cast<const unsigned char*>(frame.data());
  const std::uint32_t len = (std::uint32_t(b[0]) << 24) |
                            (std::uint32_t(b[1]) << 16) |
                            (std::uint32_t(b[2]) << 8) | std::uint32_t(b[3]);
  if (len == 0) throw FramingError("frame declares a zero-length body");
  if (len > kMaxFrameBody)
    throw FramingError("frame declares " + std::to_string(len) +
                       " bytes, above the limit");
  if (frame.size() < 4 + static_cast<std::size_t>(len))
    throw FramingError("truncated frame: body has " +
                       std::to_string(frame.size() - 4) + " of " +
                       std::to_string(len) + " bytes");
  return decode_body(frame.substr(4, len));
}

void FrameReader::feed(const char* data, std::size_t n) {
  buffer_.append(data, n);
}

std::optional<std::string> FrameReader::next_body() {
  if (buffer_.size() < 4) return std::nullopt;
  const auto b = reinterpret_cast<const unsigned char*>(buffer_.data());
  const std::uint32_t len = (std::uint32_t(b[0]) << 24) |
                            (std::uint32_t(b[1]) << 16) |
                            (std::uint32_t(b[2]) << 8) | std::uint32_t(b[3]);
  if (len == 0) {
    buffer_.erase(0, 4);  // skip it; the stream is still framed
    throw FramingError("frame declares a zero-length body");
  }
  if (len > kMaxFrameBody)
    throw FramingError("frame declares " + std::to_string(len) +
                       " bytes, above the limit");
  if (buffer_.size() < 4 + static_cast<std::size_t>(len)) return std::nullopt;
  std::string body = buffer_.substr(4, len);
  buffer_.erase(0, 4 + static_cast<std::size_t>(len));
  return body;
}

nlohmann::json payload_to_body(const ImpedancePayload& payload) {
  json j;
  j["values"] = payload.flat();
  j["scenario_id"] = payload.scenario_id;
  j["reason"] = to_string(payload.reason);
  return j;
}

ImpedancePayload payload_from_body(const nlohmann::json& body) {
  if (!body.is_object() || !body.contains("values"))
    throw WireParseError("payload body missing 'values'");
  const auto& vals = body["values"];
  if (!vals.is_array() || vals.size() != 29)
    throw WireParseError("payload must carry exactly 29 numeric values, got " +
                         std::to_string(vals.size()));
  std::array<double, 29> flat{};
  for (std::size_t i = 0; i < 29; ++i) {
    if (!vals[i].is_number())
      throw WireParseError("payload value " + std::to_string(i) +
                           " is not numeric");
    flat[i] = vals[i].get<double>();
  }
  ImpedancePayload p;
  try {
    p = ImpedancePayload::from_flat(flat);
  } catch (const Error& e) {
    throw WireParseError(e.what());
  }
  if (body.contains("scenario_id"))
    p.scenario_id = body["scenario_id"].get<std::string>();
  if (body.contains("reason")) {
    if (!payload_reason_from_string(body["reason"].get<std::string>(), p.reason))
      throw WireParseError("unknown payload reason '" +
                           body["reason"].get<std::string>() + "'");
  }
  return p;
}

}  // namespace gainsched::comms

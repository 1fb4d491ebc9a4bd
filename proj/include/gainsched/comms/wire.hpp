#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "gainsched/core/types.hpp"

namespace gainsched::comms {

enum class MessageType { scene_query, payload_reply, heartbeat, error };

const char* to_string(MessageType t);
bool message_type_from_string(const std::string& s, MessageType& out);

/// One protocol message. Frames on the wire are a 4-byte big-endian body
/// length followed by the UTF-8 JSON body.
struct WireMessage {
  MessageType type = MessageType::heartbeat;
  std::uint64_t sequence = 0;
  std::int64_t timestamp_ms = 0;
  nlohmann::json body;
};

bool operator==(const WireMessage& a, const WireMessage& b);

inline constexpr std::size_t kMaxFrameBody = 16u << 20;  // 16 MiB

std::string encode(const WireMessage& msg);

/// Decodes one complete frame (prefix + body). Truncated, empty or oversized
/// frames -> FramingError; undecodable body -> WireParseError.
WireMessage decode(const std::string& frame);

WireMessage decode_body(const std::string& body);

/// Incremental stream framer: feed arbitrary byte chunks, pop complete frame
/// bodies. A zero-length or oversized declared frame raises FramingError;
/// zero-length is skipped so the stream stays usable.
class FrameReader {
 public:
  void feed(const char* data, std::size_t n);
  /// Next complete frame body, or nullopt when more bytes are needed.
  std::optional<std::string> next_body();

 private:
  std::string buffer_;
};

/// Body helpers for the payload-bearing messages.
nlohmann::json payload_to_body(const ImpedancePayload& payload);
ImpedancePayload payload_from_body(const nlohmann::json& body);

}  // namespace gainsched::comms

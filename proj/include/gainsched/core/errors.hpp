#pragma once

#include <stdexcept>
#include <string>

namespace gainsched {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input file/message violates the documented schema (missing column, bad key).
struct SchemaError : Error {
  using Error::Error;
};

// Data parsed but violates an invariant (range, length, uniqueness).
struct ValidationError : Error {
  using Error::Error;
};

// Caller broke a module precondition (wrong dimension, non-finite input).
struct ContractError : Error {
  using Error::Error;
};

// Wire-level framing problem (truncated or oversized frame).
struct FramingError : Error {
  using Error::Error;
};

// Frame body arrived intact but is not a decodable message.
struct WireParseError : Error {
  using Error::Error;
};

struct TransportError : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

// Jacobian too ill-conditioned for a force/torque map at this configuration.
struct DegenerateConfigError : Error {
  DegenerateConfigError(const std::string& msg, double cond)
      : Error(msg), condition_number(cond) {}
  double condition_number;
};

}  // namespace gainsched

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "gainsched/perception/descriptor.hpp"

namespace gainsched::percept {

/// Input to scene description: either a named scene stub (the default,
/// reproducible path) or raw image bytes for a remote model.
struct SceneInput {
  std::string stub;
  std::vector<std::uint8_t> image;
};

class VlmClient {
 public:
  virtual ~VlmClient() = default;
  virtual SceneDescriptor describe(const SceneInput& input) = 0;
  virtual std::string name() const = 0;
};

/// Maps named scene stubs to fixed descriptors from a shipped lookup table.
/// Unknown stub -> TransportError (the caller treats the source as
/// unavailable and falls back).
class MockVlmClient : public VlmClient {
 public:
  static MockVlmClient load(const std::string& path);
  static MockVlmClient parse(const std::string& json_text,
                             const std::string& source);

  SceneDescriptor describe(const SceneInput& input) override;
  std::string name() const override { return "mock"; }

  bool has_stub(const std::string& stub) const;
  std::vector<std::string> stub_names() const;

 private:
  std::map<std::string, SceneDescriptor> stubs_;
};

/// POSTs image bytes to an HTTP endpoint that replies with the structured
/// scene message. Timeouts and connection failures -> TransportError.
class RemoteVlmClient : public VlmClient {
 public:
  RemoteVlmClient(std::string host, int port, std::string path,
                  double timeout_s = 5.0);
  SceneDescriptor describe(const SceneInput& input) override;
  std::string name() const override { return "remote"; }

 private:
  std::string host_;
  int port_;
  std::string path_;
  double timeout_s_;
};

}  // namespace gainsched::percept

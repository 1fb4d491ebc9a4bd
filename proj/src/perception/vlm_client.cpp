#include "gainsched/perception/vlm_client.hpp"

#include <json.hpp>

#include "gainsched/core/errors.hpp"
#include "gainsched/core/strings.hpp"

namespace gainsched::percept {

using nlohmann::json;

MockVlmClient MockVlmClient::parse(const std::string& json_text,
                                   const std::string& source) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(source + ": " + e.what());
  }
  if (!j.contains("stubs") || !j["stubs"].is_object())
    throw ConfigError(source + ": expected top-level 'stubs' object");

  MockVlmClient client;
  for (auto it = j["stubs"].begin(); it != j["stubs"].end(); ++it) {
    try {
      client.stubs_[it.key()] = parse_descriptor(it.value().dump());
    } catch (const Error& e) {
      throw ConfigError(source + ": stub '" + it.key() + "': " + e.what());
    }
  }
  return client;
}

MockVlmClient MockVlmClient::load(const std::string& path) {
  return parse(str::read_file(path), path);
}

SceneDescriptor MockVlmClient::describe(const SceneInput& input) {
  auto it = stubs_.find(input.stub);
  if (it == stubs_.end())
    throw TransportError("vlm unavailable: unknown scene stub '" + input.stub +
                         "'");
  return it->second;
}

bool MockVlmClient::has_stub(const std::string& stub) const {
  return stubs_.count(stub) != 0;
}

std::vector<std::string> MockVlmClient::stub_names() const {
  std::vector<std::string> names;
  names.reserve(stubs_.size());
  for (const auto& [k, v] : stubs_) names.push_back(k);
  return names;
}

}  // namespace gainsched::percept

#include <chrono>

#include <httplib.h>

#include "gainsched/core/errors.hpp"
#include "gainsched/perception/vlm_client.hpp"

namespace gainsched::percept {

RemoteVlmClient::RemoteVlmClient(std::string host, int port, std::string path,
                                 double timeout_s)
    : host_(std::move(host)),
      port_(port),
      path_(std::move(path)),
      timeout_s_(timeout_s) {}

SceneDescriptor RemoteVlmClient::describe(const SceneInput& input) {
  httplib::Client cli(host_, port_);
  const auto timeout =
      std::chrono::milliseconds(static_cast<long>(timeout_s_ * 1000));
  cli.set_connection_timeout(timeout);
  cli.set_read_timeout(timeout);

  auto res = cli.Post(path_,
                      reinterpret_cast<const char*>(input.image.data()),
                      input.image.size(), "application/octet-stream");
  if (!res)
    throw TransportError("vlm unavailable: " + host_ + ":" +
                         std::to_string(port_) + " did not respond");
  if (res->status != 200)
    throw TransportError("vlm endpoint returned status " +
                         std::to_string(res->status));
  return parse_descriptor(res->body);
}

}  // namespace gainsched::percept

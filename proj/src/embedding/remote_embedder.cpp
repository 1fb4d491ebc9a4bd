#include <chrono>

#include <httplib.h>
#include <json.hpp>

#include "gainsched/core/errors.hpp"
#include "gainsched/embedding/embedder.hpp"

namespace gainsched::embedding {

RemoteEmbedder::RemoteEmbedder(std::string host, int port, std::string path,
                               double timeout_s)
    : host_(std::move(host)),
      port_(port),
      path_(std::move(path)),
      timeout_s_(timeout_s) {}

EmbeddingVector RemoteEmbedder::embed(const std::string& text) {
  httplib::Client cli(host_, port_);
  const auto timeout =
      std::chrono::milliseconds(static_cast<long>(timeout_s_ * 1000));
  cli.set_connection_timeout(timeout);
  cli.set_read_timeout(timeout);

  auto res = cli.Post(path_, text, "text/plain");
  if (!res)
    throw TransportError("embedder unavailable: " + host_ + ":" +
                         std::to_string(port_) + " did not respond");
  if (res->status != 200)
    throw TransportError("embedder endpoint returned status " +
                         std::to_string(res->status));

  nlohmann::json j;
  try {
    j = nlohmann::json::parse(res->body);
  } catch (const nlohmann::json::exception& e) {
    throw TransportError(std::string("embedder reply is not JSON: ") + e.what());
  }
  if (!j.is_array() || j.size() != kEmbeddingDim)
    throw ContractError("embedder reply must be an array of " +
                        std::to_string(kEmbeddingDim) + " reals");
  EmbeddingVector v(kEmbeddingDim);
  for (std::size_t i = 0; i < kEmbeddingDim; ++i) v[i] = j[i].get<double>();
  return v;
}

}  // namespace gainsched::embedding

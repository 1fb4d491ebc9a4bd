#include "gainsched/embedding/embedder.hpp"

#include <cctype>
#include <cmath>
#include <cstdint>

#include "gainsched/core/errors.hpp"
#include "gainsched/core/strings.hpp"
#include "gainsched/kernels/kernels.hpp"

namespace gainsched::embedding {

std::vector<EmbeddingVector> Embedder::embed_all(
    const std::vector<std::string>& texts) {
  std::vector<EmbeddingVector> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(embed(t));
  return out;
}

namespace {

inline std::uint64_t fnv1a(const char* data, std::size_t n) {
  std::uint64_t h = 1469598103934665603ull;
  for (std::size_t i = 0; i < n; ++i) {
    h ^= static_cast<std::uint8_t>(data[i]);
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

EmbeddingVector HashEmbedder::embed(const std::string& text) {
  EmbeddingVector v(kEmbeddingDim, 0.0);
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    const std::uint64_t h = fnv1a(token.data(), token.size());
    const std::size_t bucket = h % kEmbeddingDim;
    const double sign = (h >> 63) ? -1.0 : 1.0;
    v[bucket] += sign;
    token.clear();
  };
  for (char c : text) {
    if (std::isalnum(static_cast<unsigned char>(c)))
      token.push_back(static_cast<char>(
          std::tolower(static_cast<unsigned char>(c))));
    else
      flush();
  }
  flush();

  const double norm_sq = kernels::sum_squares(v.data(), v.size());
  if (norm_sq > 0.0)
    kernels::scale(v.data(), v.size(), 1.0 / std::sqrt(norm_sq));
  return v;
}

std::unique_ptr<Embedder> make_embedder(const std::string& spec) {
  if (spec.empty() || spec == "hash") return std::make_unique<HashEmbedder>();
  if (spec.rfind("remote:", 0) == 0) {
    std::string rest = spec.substr(7);
    std::string path = "/embed";
    if (auto slash = rest.find('/'); slash != std::string::npos) {
      path = rest.substr(slash);
      rest = rest.substr(0, slash);
    }
    const auto colon = rest.find(':');
    if (colon == std::string::npos)
      throw ConfigError("embedder spec '" + spec +
                        "' needs remote:host:port[/path]");
    long long port = 0;
    if (!str::parse_int(rest.substr(colon + 1), port) || port <= 0 ||
        port > 65535)
      throw ConfigError("embedder spec '" + spec + "' has a bad port");
    return std::make_unique<RemoteEmbedder>(rest.substr(0, colon),
                                            static_cast<int>(port), path);
  }
  throw ConfigError("unknown embedder '" + spec + "'");
}

}  // namespace gainsched::embedding

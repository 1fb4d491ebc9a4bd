#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

namespace gainsched::embedding {

inline constexpr std::size_t kEmbeddingDim = 384;

using EmbeddingVector = std::vector<double>;  // length kEmbeddingDim

/// Contract: fixed 384-dim output, and determinism — the same text must
/// always produce the identical vector.
class Embedder {
 public:
  virtual ~Embedder() = default;
  virtual std::string name() const = 0;
  std::size_t dimension() const { return kEmbeddingDim; }
  virtual EmbeddingVector embed(const std::string& text) = 0;
  std::vector<EmbeddingVector> embed_all(const std::vector<std::string>& texts);
};

/// Default model-free embedder: lowercase tokens split on non-alphanumerics,
/// each token hashed (FNV-1a 64) to a signed bucket contribution, then
/// L2-normalized when nonzero. Empty text -> the zero vector.
class HashEmbedder : public Embedder {
 public:
  std::string name() const override { return "hash"; }
  EmbeddingVector embed(const std::string& text) override;
};

/// POSTs the raw text to an HTTP endpoint that replies with a JSON array of
/// 384 reals (e.g. a sentence-transformer service).
class RemoteEmbedder : public Embedder {
 public:
  RemoteEmbedder(std::string host, int port, std::string path,
                 double timeout_s = 5.0);
  std::string name() const override { return "remote"; }
  EmbeddingVector embed(const std::string& text) override;

 private:
  std::string host_;
  int port_;
  std::string path_;
  double timeout_s_;
};

/// "hash" or "remote:host:port[/path]".
std::unique_ptr<Embedder> make_embedder(const std::string& spec);

}  // namespace gainsched::embedding

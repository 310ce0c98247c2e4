#pragma once

#include <chrono>
#include <string>

#include "vchild/llm/url.hpp"
#include "vchild/nlu/embedding.hpp"

namespace vchild::nlu {

/// Remote embedding provider. Accepts OpenAI-style `{"data":[{"embedding":[..]}]}`
/// and Ollama-style `{"embeddings":[[..]]}` / `{"embedding":[..]}` replies.
/// The returned vector is re-normalised; a reply of the wrong dimension or
/// any transport failure throws ProviderUnavailable.
class HttpEmbedder final : public Embedder {
 public:
  HttpEmbedder(const std::string& endpoint, std::string model, std::size_t dim,
               std::chrono::milliseconds timeout = std::chrono::milliseconds(10000));

  std::size_t dim() const override { return dim_; }
  EmbeddingVector embed(std::string_view text) const override;

 private:
  llm::Url url_;
  std::string model_;
  std::size_t dim_;
  std::chrono::milliseconds timeout_;
};

}  // namespace vchild::nlu

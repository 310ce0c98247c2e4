#include "vchild/nlu/http_embedder.hpp"

#include <httplib.h>

#include <nlohmann/json.hpp>

#include "vchild/error.hpp"
#include "vchild/text.hpp"

namespace vchild::nlu {

namespace {

[[noreturn]] void unavailable(const std::string& what) { throw Error(Errc::ProviderUnavailable, what); }

const nlohmann::json* find_vector(const nlohmann::json& doc) {
  if (doc.contains("data") && doc["data"].is_array() && !doc["data"].empty() &&
      doc["data"][0].contains("embedding")) {
    return &doc["data"][0]["embedding"];
  }
  if (doc.contains("embeddings") && doc["embeddings"].is_array() && !doc["embeddings"].empty()) {
    return &doc["embeddings"][0];
  }
  if (doc.contains("embedding")) return &doc["embedding"];
  return nullptr;
}

}  // namespace

HttpEmbedder::HttpEmbedder(const std::string& endpoint, std::string model, std::size_t dim,
                           std::chrono::milliseconds timeout)
    : url_(llm::parse_url(endpoint)), model_(std::move(model)), dim_(dim), timeout_(timeout) {
  if (dim_ == 0) throw Error(Errc::InvalidInput, "embedding dimension must be positive");
}

EmbeddingVector HttpEmbedder::embed(std::string_view text) const {
  if (text::trim(text).empty()) throw Error(Errc::EmptyInput, "cannot embed empty text");
  httplib::Client client(url_.host, url_.port);
  const auto us = std::chrono::duration_cast<std::chrono::microseconds>(timeout_);
  client.set_connection_timeout(us);
  client.set_read_timeout(us);
  client.set_write_timeout(us);

  nlohmann::json body = {{"model", model_}, {"input", std::string(text)}, {"prompt", std::string(text)}};
  auto result = client.Post(url_.path, body.dump(), "application/json");
  if (!result) unavailable("embedding request failed: " + httplib::to_string(result.error()));
  if (result->status != 200) unavailable("embedding endpoint returned HTTP " + std::to_string(result->status));

  EmbeddingVector out;
  try {
    auto doc = nlohmann::json::parse(result->body);
    const nlohmann::json* vec = find_vector(doc);
    if (!vec || !vec->is_array()) unavailable("embedding reply has no vector");
    out.values = vec->get<std::vector<float>>();
  } catch (const nlohmann::json::exception& e) {
    unavailable(std::string("bad embedding reply: ") + e.what());
  }
  if (out.values.size() != dim_) {
    unavailable("embedding has dimension " + std::to_string(out.values.size()) + ", expected " +
                std::to_string(dim_));
  }
  try {
    normalise(out.values);
  } catch (const Error&) {
    unavailable("embedding endpoint returned a zero vector");
  }
  return out;
}

}  // namespace vchild::nlu

#pragma once

#include "vchild/llm/client.hpp"
#include "vchild/llm/url.hpp"

namespace vchild::llm {

/// Chat-completion client for OpenAI-compatible servers (`/v1/chat/completions`)
/// and Ollama's `/api/chat`. The body shape of the reply decides the parser.
class HttpChatClient final : public ChatClient {
 public:
  /// `endpoint` is the full URL of the completion route.
  explicit HttpChatClient(const std::string& endpoint);

  ChatReply complete(const ChatRequest& request) override;

  const Url& url() const noexcept { return url_; }

 private:
  Url url_;
};

/// Request body sent by HttpChatClient.
std::string chat_request_body(const ChatRequest& request);

/// Extracts the reply text and finish reason from either response shape.
/// Throws InvalidInput on anything else.
ChatReply parse_chat_response(std::string_view body);

}  // namespace vchild::llm

#pragma once

#include <chrono>
#include <string>
#include <string_view>
#include <vector>

namespace vchild::llm {

struct ChatMessage {
  std::string role;  // "system", "user" or "assistant"
  std::string content;
};

struct ChatRequest {
  std::string model;
  std::vector<ChatMessage> messages;
  double temperature = 0.7;
  int max_tokens = 256;
  std::chrono::milliseconds timeout{30000};

  /// All message contents joined in order; what matchers and hashes read.
  std::string prompt_text() const;
};

enum class FinishReason { kStop, kLength, kTimeout, kError };

std::string_view to_string(FinishReason r);

struct ChatReply {
  std::string text;
  double latency_ms = 0.0;
  FinishReason finish = FinishReason::kError;
  std::string error;  // transport or protocol detail when finish is error/timeout

  bool ok() const noexcept { return finish == FinishReason::kStop || finish == FinishReason::kLength; }
};

/// One round-trip per call. Failures are reported in the reply, never thrown.
class ChatClient {
 public:
  virtual ~ChatClient() = default;
  virtual ChatReply complete(const ChatRequest& request) = 0;
};

/// 64-bit FNV-1a of request.prompt_text(); used by hash matchers.
std::uint64_t prompt_hash(std::string_view prompt_text);

}  // namespace vchild::llm

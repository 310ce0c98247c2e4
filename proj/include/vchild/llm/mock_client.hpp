#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "vchild/llm/client.hpp"

namespace vchild::llm {

/// Matches a prompt by substrings (all must occur) or by exact prompt hash.
struct Matcher {
  std::vector<std::string> substrings;
  std::uint64_t hash = 0;
  bool by_hash = false;

  static Matcher substring(std::string s) { return {{std::move(s)}, 0, false}; }
  static Matcher all_of(std::vector<std::string> parts) { return {std::move(parts), 0, false}; }
  static Matcher prompt_hash(std::uint64_t h) { return {{}, h, true}; }

  bool matches(std::string_view prompt_text) const;
};

struct ScriptedReply {
  std::string text;
  FinishReason finish = FinishReason::kStop;
  std::chrono::milliseconds delay{0};

  static ScriptedReply failure() { return {"", FinishReason::kError, {}}; }
};

/// Deterministic stand-in for a chat endpoint. The first matching entry in
/// script order answers; unmatched prompts get kSentinel. A reply whose delay
/// exceeds the request timeout comes back as kTimeout after the timeout.
/// Thread-safe.
class MockChatClient final : public ChatClient {
 public:
  static constexpr std::string_view kSentinel = "[mock: no scripted reply]";

  struct Entry {
    Matcher matcher;
    ScriptedReply reply;
  };

  MockChatClient() = default;
  explicit MockChatClient(std::vector<Entry> script);

  ChatReply complete(const ChatRequest& request) override;

  /// Appends an entry; later entries only answer prompts earlier ones miss.
  void add(Matcher matcher, ScriptedReply reply);

  std::size_t calls() const;
  std::size_t calls_for(std::size_t entry_index) const;
  std::size_t unmatched_calls() const;
  std::vector<ChatRequest> requests() const;

 private:
  mutable std::mutex mu_;
  std::vector<Entry> script_;
  std::vector<std::size_t> hits_;
  std::size_t unmatched_ = 0;
  std::vector<ChatRequest> log_;
};

/// Builds a mock from (matcher, reply) pairs.
std::shared_ptr<MockChatClient> mock_from_script(std::vector<MockChatClient::Entry> script);

}  // namespace vchild::llm

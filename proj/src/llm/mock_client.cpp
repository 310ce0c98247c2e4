#include "vchild/llm/mock_client.hpp"

#include <thread>

namespace vchild::llm {

bool Matcher::matches(std::string_view prompt_text) const {
  if (by_hash) return llm::prompt_hash(prompt_text) == hash;
  for (const auto& s : substrings) {
    if (prompt_text.find(s) == std::string_view::npos) return false;
  }
  return true;
}

MockChatClient::MockChatClient(std::vector<Entry> script)
    : script_(std::move(script)), hits_(script_.size(), 0) {}

void MockChatClient::add(Matcher matcher, ScriptedReply reply) {
  std::lock_guard lock(mu_);
  script_.push_back({std::move(matcher), std::move(reply)});
  hits_.push_back(0);
}

ChatReply MockChatClient::complete(const ChatRequest& request) {
  const auto start = std::chrono::steady_clock::now();
  const std::string prompt = request.prompt_text();
  ScriptedReply scripted{std::string(kSentinel), FinishReason::kStop, {}};
  {
    std::lock_guard lock(mu_);
    log_.push_back(request);
    bool matched = false;
    for (std::size_t i = 0; i < script_.size(); ++i) {
      if (script_[i].matcher.matches(prompt)) {
        ++hits_[i];
        scripted = script_[i].reply;
        matched = true;
        break;
      }
    }
    if (!matched) ++unmatched_;
  }

  ChatReply reply;
  if (scripted.delay > request.timeout) {
    std::this_thread::sleep_for(request.timeout);
    reply.finish = FinishReason::kTimeout;
    reply.error = "mock delay exceeds timeout";
  } else {
    if (scripted.delay.count() > 0) std::this_thread::sleep_for(scripted.delay);
    reply.finish = scripted.finish;
    if (scripted.finish == FinishReason::kStop || scripted.finish == FinishReason::kLength) {
      reply.text = scripted.text;
    } else {
      reply.error = "scripted failure";
    }
  }
  reply.latency_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return reply;
}

std::size_t MockChatClient::calls() const {
  std::lock_guard lock(mu_);
  return log_.size();
}

std::size_t MockChatClient::calls_for(std::size_t entry_index) const {
  std::lock_guard lock(mu_);
  return hits_.at(entry_index);
}

std::size_t MockChatClient::unmatched_calls() const {
  std::lock_guard lock(mu_);
  return unmatched_;
}

std::vector<ChatRequest> MockChatClient::requests() const {
  std::lock_guard lock(mu_);
  return log_;
}

std::shared_ptr<MockChatClient> mock_from_script(std::vector<MockChatClient::Entry> script) {
  return std::make_shared<MockChatClient>(std::move(script));
}

}  // namespace vchild::llm

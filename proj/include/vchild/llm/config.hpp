#pragma once

#include <chrono>
#include <string>

namespace vchild::llm {

inline constexpr const char* kEndpointEnv = "VCHILD_LLM_ENDPOINT";

struct LlmConfig {
  std::string endpoint = "http://127.0.0.1:11434/v1/chat/completions";
  std::string model = "llama3.2";
  double nlu_temperature = 0.0;
  double nlg_temperature = 0.7;
  double bypass_temperature = 0.7;
  int nlu_max_tokens = 16;
  int reply_max_tokens = 160;
  std::chrono::milliseconds timeout{30000};

  /// Replaces `endpoint` with $VCHILD_LLM_ENDPOINT when it is set and non-empty.
  LlmConfig with_env_override() const;
};

}  // namespace vchild::llm

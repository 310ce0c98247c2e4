#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vchild::nlg {

// Where a child message came from. `kOpening` marks the scenario greeting.
enum class ReplySource { kRuleBank, kLlmNlg, kLlmBypass, kDefaultDesire, kLeave, kOpening };

std::string_view to_string(ReplySource source);
std::optional<ReplySource> reply_source_from_string(std::string_view name);

struct ChildUtterance {
  std::string text;
  ReplySource source = ReplySource::kRuleBank;
  int turn = 0;
};

struct PostprocessOptions {
  std::size_t cap = 400;  // bytes
  // Lines starting with any of these (case-insensitive) are dropped.
  std::vector<std::string> blocked_prefixes = {
      "As an AI", "As a language model", "As an assistant", "I'm an AI", "I am an AI",
      "I am a language model", "I'm a language model", "Note:", "(Note", "Assistant:",
  };
};

/// Cleans a raw LLM reply into chat text: trims whitespace and surrounding
/// quotes, drops persona-breaking lines, and truncates at the last sentence
/// end within `cap`. Throws EmptyAfterCleaning when nothing usable remains.
std::string postprocess(std::string_view raw, const PostprocessOptions& options = {});

}  // namespace vchild::nlg

#include "vchild/nlg/postprocess.hpp"

#include <array>
#include <utility>

#include "vchild/error.hpp"
#include "vchild/text.hpp"

namespace vchild::nlg {

namespace {

constexpr std::array<std::pair<std::string_view, std::string_view>, 5> kQuotePairs = {{
    {"\"", "\""}, {"'", "'"}, {"\xE2\x80\x9C", "\xE2\x80\x9D"}, {"\xE2\x80\x98", "\xE2\x80\x99"}, {"`", "`"},
}};

std::string_view strip_quotes(std::string_view s) {
  bool changed = true;
  while (changed) {
    changed = false;
    s = text::trim(s);
    for (auto [open, close] : kQuotePairs) {
      if (s.size() >= open.size() + close.size() && s.starts_with(open) && s.ends_with(close)) {
        s = s.substr(open.size(), s.size() - open.size() - close.size());
        changed = true;
        break;
      }
    }
  }
  return s;
}

bool is_terminator(char c) { return c == '.' || c == '!' || c == '?'; }

std::string truncate(std::string_view s, std::size_t cap) {
  if (s.size() <= cap) return std::string(s);
  // Last sentence terminator that still fits; closing quotes/brackets after
  // it are not kept.
  for (std::size_t i = cap; i-- > 0;) {
    if (is_terminator(s[i])) return std::string(text::trim(s.substr(0, i + 1)));
  }
  std::string_view head = text::utf8_prefix(s, cap);
  std::size_t space = head.find_last_of(' ');
  if (space != std::string_view::npos && space > 0) head = head.substr(0, space);
  return std::string(text::trim(head));
}

}  // namespace

std::string_view to_string(ReplySource source) {
  switch (source) {
    case ReplySource::kRuleBank: return "rule_bank";
    case ReplySource::kLlmNlg: return "llm_nlg";
    case ReplySource::kLlmBypass: return "llm_bypass";
    case ReplySource::kDefaultDesire: return "default_desire";
    case ReplySource::kLeave: return "leave";
    case ReplySource::kOpening: return "opening";
  }
  return "?";
}

std::optional<ReplySource> reply_source_from_string(std::string_view name) {
  for (ReplySource s : {ReplySource::kRuleBank, ReplySource::kLlmNlg, ReplySource::kLlmBypass,
                        ReplySource::kDefaultDesire, ReplySource::kLeave, ReplySource::kOpening}) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

std::string postprocess(std::string_view raw, const PostprocessOptions& options) {
  std::string kept;
  for (std::string_view line : text::split_lines(strip_quotes(raw))) {
    std::string_view l = text::trim(line);
    bool blocked = false;
    for (const auto& prefix : options.blocked_prefixes) {
      if (text::starts_with_icase(l, prefix)) {
        blocked = true;
        break;
      }
    }
    if (blocked || l.empty()) continue;
    if (!kept.empty()) kept.push_back(' ');
    kept.append(l);
  }
  std::string cleaned = text::collapse_whitespace(strip_quotes(kept));
  cleaned = truncate(cleaned, options.cap);
  if (text::trim(cleaned).empty()) {
    throw Error(Errc::EmptyAfterCleaning, "LLM reply empty after cleaning");
  }
  return cleaned;
}

}  // namespace vchild::nlg

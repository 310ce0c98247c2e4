#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>

namespace vchild::nlg {

enum class PromptKind { kNlu, kNlg, kBypass };

std::string_view to_string(PromptKind kind);

struct PromptMeta {
  PromptKind kind = PromptKind::kNlg;
  std::string session_id;
  int turn = 0;
};

struct PromptText {
  std::string system_part;
  std::string user_part;
  PromptMeta meta;

  /// System and user parts joined by a blank line; what the mock client and
  /// prompt hashes see.
  std::string full_text() const;
  std::size_t size() const { return system_part.size() + user_part.size(); }
};

using Placeholders = std::map<std::string, std::string, std::less<>>;

/// Substitutes `{name}` placeholders. `{{` and `}}` produce literal braces.
/// Throws TemplateError on an unterminated or unknown placeholder.
std::string render_template(std::string_view tmpl, const Placeholders& values);

/// Prompt templates for the three prompt kinds, one system and one user
/// template each. Files are `<kind>.system.txt` and `<kind>.user.txt`.
class TemplateSet {
 public:
  struct Pair {
    std::string system;
    std::string user;
  };

  static TemplateSet load(const std::filesystem::path& dir);
  static TemplateSet from_strings(std::map<PromptKind, Pair> templates);

  const Pair& get(PromptKind kind) const { return templates_.at(kind); }

 private:
  explicit TemplateSet(std::map<PromptKind, Pair> templates);
  void check() const;

  std::map<PromptKind, Pair> templates_;
};

struct NluExample {
  std::string text;
  std::string intent_id;
};

/// Limits keeping every prompt bounded regardless of input size.
struct PromptLimits {
  std::size_t max_neighbours = 10;
  std::size_t max_example_chars = 200;
  std::size_t max_input_chars = 1000;
};

class PromptBuilder {
 public:
  explicit PromptBuilder(TemplateSet templates, PromptLimits limits = {});

  /// Intent classification prompt listing each neighbour with its intent.
  PromptText build_nlu_prompt(std::string_view trainee_input, std::span<const NluExample> neighbours,
                              std::span<const std::string> known_intents) const;

  /// Throws WrongVariantCount unless exactly four variants are given.
  PromptText build_nlg_prompt(std::string_view persona, std::string_view goal,
                              std::span<const std::string> variants,
                              std::string_view trainee_input) const;

  PromptText build_bypass_prompt(std::string_view persona, std::string_view goal,
                                 std::string_view trainee_input) const;

  const PromptLimits& limits() const noexcept { return limits_; }

 private:
  PromptText build(PromptKind kind, const Placeholders& values) const;

  TemplateSet templates_;
  PromptLimits limits_;
};

inline constexpr std::string_view kUnknownIntent = "unknown";

}  // namespace vchild::nlg

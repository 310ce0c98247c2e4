#include "vchild/nlg/prompt.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "vchild/error.hpp"
#include "vchild/text.hpp"

namespace vchild::nlg {

namespace {

[[noreturn]] void template_error(const std::string& what) { throw Error(Errc::TemplateError, what); }

const std::set<std::string, std::less<>> kKnownPlaceholders = {
    "persona", "goal", "trainee_input", "examples", "intent_list", "unknown_token",
};

// Placeholder names used by `tmpl`, in order of appearance.
std::set<std::string> placeholders_in(std::string_view tmpl) {
  std::set<std::string> names;
  for (std::size_t i = 0; i < tmpl.size(); ++i) {
    if (tmpl[i] == '{') {
      if (i + 1 < tmpl.size() && tmpl[i + 1] == '{') {
        ++i;
        continue;
      }
      std::size_t close = tmpl.find('}', i);
      if (close == std::string_view::npos) template_error("unterminated placeholder");
      names.emplace(tmpl.substr(i + 1, close - i - 1));
      i = close;
    }
  }
  return names;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) template_error("cannot open template " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string clip(std::string_view s, std::size_t max_chars) {
  return std::string(text::utf8_prefix(text::trim(s), max_chars));
}

}  // namespace

std::string_view to_string(PromptKind kind) {
  switch (kind) {
    case PromptKind::kNlu: return "nlu";
    case PromptKind::kNlg: return "nlg";
    case PromptKind::kBypass: return "bypass";
  }
  return "?";
}

std::string PromptText::full_text() const { return system_part + "\n\n" + user_part; }

std::string render_template(std::string_view tmpl, const Placeholders& values) {
  std::string out;
  out.reserve(tmpl.size() * 2);
  for (std::size_t i = 0; i < tmpl.size(); ++i) {
    char c = tmpl[i];
    if (c == '{' || c == '}') {
      if (i + 1 < tmpl.size() && tmpl[i + 1] == c) {
        out.push_back(c);
        ++i;
        continue;
      }
      if (c == '}') template_error("stray '}' in template");
      std::size_t close = tmpl.find('}', i);
      if (close == std::string_view::npos) template_error("unterminated placeholder");
      std::string_view name = tmpl.substr(i + 1, close - i - 1);
      auto it = values.find(name);
      if (it == values.end()) template_error("no value for placeholder {" + std::string(name) + "}");
      out += it->second;
      i = close;
      continue;
    }
    out.push_back(c);
  }
  return out;
}

TemplateSet::TemplateSet(std::map<PromptKind, Pair> templates) : templates_(std::move(templates)) {
  check();
}

TemplateSet TemplateSet::from_strings(std::map<PromptKind, Pair> templates) {
  return TemplateSet(std::move(templates));
}

TemplateSet TemplateSet::load(const std::filesystem::path& dir) {
  std::map<PromptKind, Pair> templates;
  for (PromptKind kind : {PromptKind::kNlu, PromptKind::kNlg, PromptKind::kBypass}) {
    std::string base(to_string(kind));
    templates[kind] = {read_file(dir / (base + ".system.txt")), read_file(dir / (base + ".user.txt"))};
  }
  return TemplateSet(std::move(templates));
}

void TemplateSet::check() const {
  for (PromptKind kind : {PromptKind::kNlu, PromptKind::kNlg, PromptKind::kBypass}) {
    auto it = templates_.find(kind);
    if (it == templates_.end()) template_error("missing " + std::string(to_string(kind)) + " templates");
    auto sys = placeholders_in(it->second.system);
    auto user = placeholders_in(it->second.user);
    std::set<std::string> all = sys;
    all.insert(user.begin(), user.end());
    for (const auto& name : all) {
      if (!kKnownPlaceholders.count(name)) {
        template_error(std::string(to_string(kind)) + " template uses unknown placeholder {" + name + "}");
      }
    }
    auto require = [&](const std::set<std::string>& where, const char* name, const char* part) {
      if (!where.count(name)) {
        template_error(std::string(to_string(kind)) + " " + part + " template must contain {" + name + "}");
      }
    };
    switch (kind) {
      case PromptKind::kNlu:
        require(user, "examples", "user");
        require(user, "trainee_input", "user");
        require(all, "unknown_token", "system or user");
        break;
      case PromptKind::kNlg:
        require(sys, "persona", "system");
        require(user, "examples", "user");
        require(user, "trainee_input", "user");
        require(all, "goal", "system or user");
        break;
      case PromptKind::kBypass:
        require(sys, "persona", "system");
        require(user, "trainee_input", "user");
        require(all, "goal", "system or user");
        if (all.count("examples")) template_error("bypass templates must not contain {examples}");
        break;
    }
  }
}

PromptBuilder::PromptBuilder(TemplateSet templates, PromptLimits limits)
    : templates_(std::move(templates)), limits_(limits) {}

PromptText PromptBuilder::build(PromptKind kind, const Placeholders& values) const {
  const auto& pair = templates_.get(kind);
  PromptText prompt;
  prompt.system_part = render_template(pair.system, values);
  prompt.user_part = render_template(pair.user, values);
  prompt.meta.kind = kind;
  return prompt;
}

PromptText PromptBuilder::build_nlu_prompt(std::string_view trainee_input,
                                           std::span<const NluExample> neighbours,
                                           std::span<const std::string> known_intents) const {
  if (neighbours.empty()) throw Error(Errc::InvalidInput, "NLU prompt needs at least one neighbour");
  std::string examples;
  const std::size_t n = std::min(neighbours.size(), limits_.max_neighbours);
  for (std::size_t i = 0; i < n; ++i) {
    examples += "- \"" + clip(neighbours[i].text, limits_.max_example_chars) + "\" -> " +
                neighbours[i].intent_id + "\n";
  }
  if (!examples.empty()) examples.pop_back();

  std::string intent_list;
  for (const auto& id : known_intents) {
    if (!intent_list.empty()) intent_list += ", ";
    intent_list += id;
  }

  return build(PromptKind::kNlu, {{"examples", examples},
                                  {"intent_list", intent_list},
                                  {"trainee_input", clip(trainee_input, limits_.max_input_chars)},
                                  {"unknown_token", std::string(kUnknownIntent)}});
}

PromptText PromptBuilder::build_nlg_prompt(std::string_view persona, std::string_view goal,
                                           std::span<const std::string> variants,
                                           std::string_view trainee_input) const {
  if (variants.size() != 4) {
    throw Error(Errc::WrongVariantCount,
                "NLG prompt needs exactly 4 example responses, got " + std::to_string(variants.size()));
  }
  std::string examples;
  for (std::size_t i = 0; i < variants.size(); ++i) {
    examples += std::to_string(i + 1) + ". " + variants[i] + "\n";
  }
  examples.pop_back();
  return build(PromptKind::kNlg, {{"persona", std::string(persona)},
                                  {"goal", std::string(goal)},
                                  {"examples", examples},
                                  {"trainee_input", clip(trainee_input, limits_.max_input_chars)}});
}

PromptText PromptBuilder::build_bypass_prompt(std::string_view persona, std::string_view goal,
                                              std::string_view trainee_input) const {
  return build(PromptKind::kBypass, {{"persona", std::string(persona)},
                                     {"goal", std::string(goal)},
                                     {"trainee_input", clip(trainee_input, limits_.max_input_chars)}});
}

}  // namespace vchild::nlg

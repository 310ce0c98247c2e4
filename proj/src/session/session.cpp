#include "vchild/session/session.hpp"

#include <array>

#include "vchild/error.hpp"
#include "vchild/nlu/embedding.hpp"

namespace vchild::session {

std::string_view to_string(Condition c) {
  return c == Condition::kRuleBased ? "rule_based" : "llm_integrated";
}

std::optional<Condition> condition_from_string(std::string_view name) {
  if (name == "rule_based") return Condition::kRuleBased;
  if (name == "llm_integrated") return Condition::kLlmIntegrated;
  return std::nullopt;
}

std::string_view to_string(Role r) { return r == Role::kTrainee ? "trainee" : "child"; }

std::string_view to_string(SessionStatus s) { return s == SessionStatus::kActive ? "active" : "ended"; }

void PacingPolicy::check() const {
  if (!(min_delay_s >= 0.0 && min_delay_s <= max_delay_s)) {
    throw Error(Errc::InvalidInput, "pacing needs 0 <= min_delay_s <= max_delay_s");
  }
}

bool is_farewell(std::string_view trainee_text) {
  static constexpr std::array<std::string_view, 8> kFarewells = {
      "bye", "goodbye", "good bye", "bye bye", "ok bye", "okay bye", "bye for now", "goodbye for now",
  };
  const std::string folded = nlu::fold_for_trigrams(trainee_text);
  for (auto f : kFarewells) {
    if (folded == f) return true;
  }
  return false;
}

}  // namespace vchild::session

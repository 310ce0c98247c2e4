#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "vchild/bdi/model.hpp"
#include "vchild/nlg/postprocess.hpp"
#include "vchild/session/clock.hpp"

namespace vchild::session {

enum class Condition { kRuleBased, kLlmIntegrated };

std::string_view to_string(Condition c);
std::optional<Condition> condition_from_string(std::string_view name);

enum class Role { kTrainee, kChild };

std::string_view to_string(Role r);

struct Annotations {
  std::string intent;  // recognised intent, "unknown", or empty for the opening
  nlg::ReplySource source = nlg::ReplySource::kRuleBank;
  std::string desire;  // active desire the reply was chosen under
  int phase = 1;
  std::optional<std::size_t> variant;  // rule bank variant index
  std::string detail;                  // e.g. the LLM failure that forced a default
};

struct ChatMessage {
  Role role = Role::kTrainee;
  std::string text;
  std::int64_t t_ms = 0;  // session time
  std::optional<Annotations> annotations;  // always set on child messages
};

/// Artificial reply delay, uniform in [min_delay_s, max_delay_s].
struct PacingPolicy {
  double min_delay_s = 15.0;
  double max_delay_s = 25.0;
  bool enabled = true;

  /// Throws InvalidInput unless 0 <= min <= max.
  void check() const;
};

enum class SessionStatus { kActive, kEnded };

std::string_view to_string(SessionStatus s);

struct ScenarioSelector {
  std::set<std::string> exclude;
  std::optional<std::string> forced;  // replay pins the scenario
};

struct Session {
  std::string id;
  Condition condition = Condition::kRuleBased;
  std::shared_ptr<const bdi::Scenario> scenario;
  std::string child_name;
  bdi::BdiState bdi;
  std::vector<ChatMessage> transcript;
  std::vector<std::vector<ChatMessage>> archived_runs;
  ScenarioSelector selector;
  std::uint64_t seed = 0;
  int run = 0;   // restarts so far
  int turn = 0;  // trainee messages in this run
  Millis started_at{0};
  double budget_s = 900.0;
  SessionStatus status = SessionStatus::kActive;

  bdi::EndReason end_reason() const noexcept { return bdi.end_reason; }
  const std::string& scenario_id() const { return scenario->id; }
};

/// Outcome of one trainee turn.
struct PostResult {
  std::optional<ChatMessage> child;  // absent when the trainee said bye or time ran out
  SessionStatus status = SessionStatus::kActive;
  bdi::EndReason end_reason = bdi::EndReason::kNone;
  double remaining_s = 0.0;
};

/// True for farewells that end the conversation ("bye", "goodbye", ...).
bool is_farewell(std::string_view trainee_text);

}  // namespace vchild::session

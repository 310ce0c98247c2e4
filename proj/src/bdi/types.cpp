#include "vchild/bdi/types.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "vchild/error.hpp"

namespace vchild::bdi {

namespace {

[[noreturn]] void invalid(const std::string& scenario_id, const std::string& what) {
  throw Error(Errc::InvalidScenario, "scenario '" + scenario_id + "': " + what);
}

template <typename T>
const T* find_by_id(const std::vector<T>& items, std::string_view id) {
  auto it = std::find_if(items.begin(), items.end(), [&](const T& x) { return x.id == id; });
  return it == items.end() ? nullptr : &*it;
}

}  // namespace

std::string_view to_string(Phase p) {
  switch (p) {
    case Phase::kRapport: return "rapport";
    case Phase::kClarifyStory: return "clarify_story";
    case Phase::kSetGoal: return "set_goal";
    case Phase::kWorkOnGoal: return "work_on_goal";
    case Phase::kWrapUp: return "wrap_up";
  }
  return "?";
}

std::optional<Phase> phase_from_string(std::string_view name) {
  for (Phase p : kAllPhases) {
    if (to_string(p) == name) return p;
  }
  return std::nullopt;
}

std::string_view to_string(EndReason r) {
  switch (r) {
    case EndReason::kNone: return "none";
    case EndReason::kLeft: return "left";
    case EndReason::kTraineeEnded: return "trainee_ended";
    case EndReason::kTimeUp: return "time_up";
    case EndReason::kCompleted: return "completed";
  }
  return "?";
}

std::optional<EndReason> end_reason_from_string(std::string_view name) {
  for (EndReason r : {EndReason::kNone, EndReason::kLeft, EndReason::kTraineeEnded,
                      EndReason::kTimeUp, EndReason::kCompleted}) {
    if (to_string(r) == name) return r;
  }
  return std::nullopt;
}

double BdiState::belief(std::string_view id) const {
  auto it = beliefs.find(std::string(id));
  if (it == beliefs.end()) {
    throw Error(Errc::InvalidInput, "no belief '" + std::string(id) + "' in state");
  }
  return it->second;
}

const Intent* Scenario::find_intent(std::string_view id) const { return find_by_id(intents, id); }
const Desire* Scenario::find_desire(std::string_view id) const { return find_by_id(desires, id); }
const Belief* Scenario::find_belief(std::string_view id) const { return find_by_id(beliefs, id); }

std::vector<std::string> Scenario::intent_ids() const {
  std::vector<std::string> ids;
  ids.reserve(intents.size());
  for (const auto& intent : intents) ids.push_back(intent.id);
  return ids;
}

void Scenario::validate() const {
  if (id.empty()) invalid("<unnamed>", "empty id");
  if (persona.empty()) invalid(id, "empty persona");
  if (greeting.empty()) invalid(id, "empty greeting");
  if (child_name_pool.empty()) invalid(id, "child_name_pool must not be empty");
  for (const auto& name : child_name_pool) {
    if (name.empty()) invalid(id, "empty child name");
  }

  std::set<std::string> seen;
  for (const auto& b : beliefs) {
    if (b.id.empty() || !seen.insert(b.id).second) invalid(id, "duplicate or empty belief id '" + b.id + "'");
    if (!(b.value >= 0.0 && b.value <= 1.0)) invalid(id, "belief '" + b.id + "' initial value outside [0,1]");
  }

  seen.clear();
  for (const auto& intent : intents) {
    if (intent.id.empty() || !seen.insert(intent.id).second) {
      invalid(id, "duplicate or empty intent id '" + intent.id + "'");
    }
    if (intent.id == "unknown") invalid(id, "'unknown' is reserved and cannot be an intent id");
    for (const auto& e : intent.effects) {
      if (!find_belief(e.belief_id)) {
        invalid(id, "intent '" + intent.id + "' affects unknown belief '" + e.belief_id + "'");
      }
      if (!std::isfinite(e.delta)) invalid(id, "intent '" + intent.id + "' has a non-finite delta");
    }
  }

  seen.clear();
  for (const auto& d : desires) {
    if (d.id.empty() || !seen.insert(d.id).second) invalid(id, "duplicate or empty desire id '" + d.id + "'");
    if (d.default_responses.empty()) invalid(id, "desire '" + d.id + "' has no default responses");
    for (const auto& r : d.default_responses) {
      if (r.empty()) invalid(id, "desire '" + d.id + "' has an empty default response");
    }
    for (const auto& c : d.activation) {
      if (!find_belief(c.belief_id)) {
        invalid(id, "desire '" + d.id + "' tests unknown belief '" + c.belief_id + "'");
      }
      if (!(c.threshold >= 0.0 && c.threshold <= 1.0)) {
        invalid(id, "desire '" + d.id + "' threshold outside [0,1]");
      }
    }
  }

  for (Phase p : kAllPhases) {
    bool has_fallback = false;
    for (const auto& d : desires) {
      if (d.phase == p && d.activation.empty()) has_fallback = true;
    }
    if (!has_fallback) {
      invalid(id, "phase '" + std::string(to_string(p)) + "' needs an unconditional desire");
    }
    auto it = completion_desires.find(p);
    if (it == completion_desires.end()) {
      invalid(id, "phase '" + std::string(to_string(p)) + "' has no completion desire");
    }
    const Desire* done = find_desire(it->second);
    if (!done || done->phase != p) {
      invalid(id, "completion desire '" + it->second + "' must exist in phase '" +
                      std::string(to_string(p)) + "'");
    }
    if (done->activation.empty()) {
      invalid(id, "completion desire '" + done->id + "' must have activation conditions");
    }
  }

  std::set<std::pair<std::string, std::string>> entries;
  for (const auto& r : responses) {
    if (!find_intent(r.intent_id)) invalid(id, "response for unknown intent '" + r.intent_id + "'");
    if (r.desire_id && !find_desire(*r.desire_id)) {
      invalid(id, "response for '" + r.intent_id + "' names unknown desire '" + *r.desire_id + "'");
    }
    for (const auto& v : r.variants) {
      if (v.empty()) invalid(id, "response for '" + r.intent_id + "' has an empty variant");
    }
    if (!entries.emplace(r.intent_id, r.desire_id.value_or("")).second) {
      invalid(id, "duplicate response entry for '" + r.intent_id + "'");
    }
  }
  for (const auto& intent : intents) {
    if (!entries.count({intent.id, ""})) {
      invalid(id, "intent '" + intent.id + "' has no unconditioned response entry");
    }
  }

  if (!find_belief(abort.trust_belief)) invalid(id, "abort trust belief '" + abort.trust_belief + "' not defined");
  if (!(abort.trust_floor >= 0.0 && abort.trust_floor <= 1.0)) invalid(id, "trust floor outside [0,1]");
  if (abort.violation_limit < 0) invalid(id, "negative violation limit");
  if (abort.unknown_streak_limit < 1) invalid(id, "unknown streak limit must be positive");
  if (abort.leave_message.empty()) invalid(id, "empty leave message");
  if (!(nlu_tau > 0.0)) invalid(id, "nlu_tau must be positive");
}

}  // namespace vchild::bdi

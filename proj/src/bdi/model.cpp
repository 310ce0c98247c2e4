#include "vchild/bdi/model.hpp"

#include <algorithm>

#include "vchild/error.hpp"
#include "vchild/rng.hpp"

namespace vchild::bdi {

BdiModel::BdiModel(std::shared_ptr<const Scenario> scenario) : scenario_(std::move(scenario)) {
  if (!scenario_) throw Error(Errc::InvalidScenario, "null scenario");
  scenario_->validate();
}

BdiState BdiModel::initial_state() const {
  BdiState state;
  for (const auto& b : scenario_->beliefs) state.beliefs.emplace(b.id, b.value);
  state.phase = Phase::kRapport;
  state.active_desire = evaluate_desire(state, state.phase).id;
  return state;
}

void BdiModel::require_live(const BdiState& state) const {
  if (state.terminated()) {
    throw Error(Errc::TerminatedSession,
                "session already ended (" + std::string(to_string(state.end_reason)) + ")");
  }
}

bool BdiModel::desire_holds(const Desire& desire, const BdiState& state) const {
  return std::all_of(desire.activation.begin(), desire.activation.end(),
                     [&](const Condition& c) { return c.holds(state.belief(c.belief_id)); });
}

const Desire& BdiModel::evaluate_desire(const BdiState& state, Phase phase) const {
  for (const auto& d : scenario_->desires) {
    if (d.phase == phase && desire_holds(d, state)) return d;
  }
  // validate() guarantees an unconditional desire per phase.
  throw Error(Errc::InvalidScenario, "no active desire in phase " + std::string(to_string(phase)));
}

const Desire& BdiModel::active_desire(const BdiState& state) const {
  const Desire* d = scenario_->find_desire(state.active_desire);
  if (!d) throw Error(Errc::InvalidInput, "state names unknown desire '" + state.active_desire + "'");
  return *d;
}

const ResponseEntry& BdiModel::response_for(std::string_view intent_id,
                                            std::string_view desire_id) const {
  const ResponseEntry* fallback = nullptr;
  for (const auto& r : scenario_->responses) {
    if (r.intent_id != intent_id) continue;
    if (r.desire_id && *r.desire_id == desire_id) return r;
    if (!r.desire_id) fallback = &r;
  }
  return *fallback;
}

TurnResult BdiModel::apply_intent(const BdiState& state, std::string_view intent_id,
                                  std::uint64_t seed) const {
  require_live(state);
  const Intent* intent = scenario_->find_intent(intent_id);
  if (!intent) throw Error(Errc::UnknownIntentId, "unknown intent '" + std::string(intent_id) + "'");

  TurnResult out;
  BdiState& next = out.state;
  next = state;
  next.unknown_streak = 0;

  const bool early_phase = ordinal(state.phase) <= ordinal(Phase::kClarifyStory);
  for (const auto& e : intent->effects) {
    if (early_phase && e.belief_id == scenario_->abort.trust_belief && e.delta < 0.0) {
      ++next.violation_count;
      break;
    }
  }

  for (const auto& e : intent->effects) {
    double& v = next.beliefs.at(e.belief_id);
    v = std::clamp(v + e.delta, 0.0, 1.0);
  }

  next.active_desire = evaluate_desire(next, next.phase).id;

  const ResponseEntry& entry = response_for(intent->id, next.active_desire);
  out.provenance.variant_index = pick_index(derive_seed(seed, SeedPurpose::kVariant), kVariantsPerResponse);
  out.provenance.desire_id = next.active_desire;
  out.reply = entry.variants[out.provenance.variant_index];
  out.variants = entry.variants;

  if (phase_complete(next)) {
    if (next.phase == Phase::kWrapUp) {
      next.end_reason = EndReason::kCompleted;
      return out;
    }
    next = advance_phase(next);
    out.phase_advanced = true;
  }

  out.leave_message = check_abort(next);
  return out;
}

std::string BdiModel::default_response(const BdiState& state, std::uint64_t seed) const {
  require_live(state);
  const Desire& d = active_desire(state);
  return d.default_responses[pick_index(derive_seed(seed, SeedPurpose::kDefault),
                                        d.default_responses.size())];
}

BdiState BdiModel::register_unknown(const BdiState& state) const {
  require_live(state);
  BdiState next = state;
  if (++next.unknown_streak >= scenario_->abort.unknown_streak_limit) {
    ++next.violation_count;
    next.unknown_streak = 0;
  }
  return next;
}

std::optional<std::string> BdiModel::check_abort(BdiState& state) const {
  if (state.terminated()) return std::nullopt;
  const AbortRules& rules = scenario_->abort;
  const bool lost_trust = state.belief(rules.trust_belief) < rules.trust_floor;
  const bool too_many_violations = state.violation_count > rules.violation_limit;
  if (!lost_trust && !too_many_violations) return std::nullopt;
  state.end_reason = EndReason::kLeft;
  return rules.leave_message;
}

bool BdiModel::phase_complete(const BdiState& state) const {
  const Desire* done = scenario_->find_desire(scenario_->completion_desires.at(state.phase));
  return desire_holds(*done, state);
}

BdiState BdiModel::advance_phase(const BdiState& state) const {
  require_live(state);
  if (state.phase == Phase::kWrapUp) {
    throw Error(Errc::AlreadyFinalPhase, "wrap-up is the final phase");
  }
  if (!phase_complete(state)) {
    throw Error(Errc::PhaseNotComplete,
                "phase " + std::string(to_string(state.phase)) + " is not complete");
  }
  BdiState next = state;
  next.phase = static_cast<Phase>(ordinal(state.phase) + 1);
  next.active_desire = evaluate_desire(next, next.phase).id;
  return next;
}

BdiState BdiModel::end(const BdiState& state, EndReason reason) const {
  BdiState next = state;
  if (!next.terminated()) next.end_reason = reason;
  return next;
}

}  // namespace vchild::bdi

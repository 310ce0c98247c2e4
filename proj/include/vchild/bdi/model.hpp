#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "vchild/bdi/types.hpp"

namespace vchild::bdi {

struct Provenance {
  std::size_t variant_index = 0;
  std::string desire_id;
};

struct TurnResult {
  BdiState state;
  std::string reply;
  std::array<std::string, kVariantsPerResponse> variants;  // the entry the reply came from
  Provenance provenance;
  bool phase_advanced = false;
  std::optional<std::string> leave_message;  // set when the abort check fired
};

/// Rule-based virtual child over one scenario.
///
/// All operations are pure with respect to the state argument: they take a
/// state and return a new one. The model only reads the scenario, so a
/// single instance can serve any number of sessions concurrently.
class BdiModel {
 public:
  explicit BdiModel(std::shared_ptr<const Scenario> scenario);

  const Scenario& scenario() const noexcept { return *scenario_; }

  BdiState initial_state() const;

  /// Applies a recognised intent: belief deltas with clamping, desire
  /// re-evaluation, reply selection, phase advance and the abort check.
  /// Throws UnknownIntentId or TerminatedSession.
  TurnResult apply_intent(const BdiState& state, std::string_view intent_id,
                          std::uint64_t seed) const;

  /// Seeded pick among the active desire's default responses.
  std::string default_response(const BdiState& state, std::uint64_t seed) const;

  /// Counts an unrecognised turn towards the unknown-streak violation rule.
  BdiState register_unknown(const BdiState& state) const;

  /// Returns the leave message and terminates `state` when trust fell below
  /// the floor or violations exceed the limit.
  std::optional<std::string> check_abort(BdiState& state) const;

  bool phase_complete(const BdiState& state) const;

  /// Moves exactly one phase forward. Throws PhaseNotComplete,
  /// AlreadyFinalPhase or TerminatedSession.
  BdiState advance_phase(const BdiState& state) const;

  /// Highest-priority desire of `phase` whose activation holds for `state`.
  const Desire& evaluate_desire(const BdiState& state, Phase phase) const;

  const Desire& active_desire(const BdiState& state) const;

  BdiState end(const BdiState& state, EndReason reason) const;

 private:
  void require_live(const BdiState& state) const;
  bool desire_holds(const Desire& desire, const BdiState& state) const;
  const ResponseEntry& response_for(std::string_view intent_id,
                                    std::string_view desire_id) const;

  std::shared_ptr<const Scenario> scenario_;
};

}  // namespace vchild::bdi

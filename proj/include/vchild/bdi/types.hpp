#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vchild::bdi {

// Five-phase counselling model. Ordinals are 1-based and totally ordered.
enum class Phase : int {
  kRapport = 1,
  kClarifyStory = 2,
  kSetGoal = 3,
  kWorkOnGoal = 4,
  kWrapUp = 5,
};

inline constexpr std::array<Phase, 5> kAllPhases = {
    Phase::kRapport, Phase::kClarifyStory, Phase::kSetGoal, Phase::kWorkOnGoal, Phase::kWrapUp};

constexpr int ordinal(Phase p) noexcept { return static_cast<int>(p); }
std::string_view to_string(Phase p);
std::optional<Phase> phase_from_string(std::string_view name);

struct Belief {
  std::string id;
  std::string label;
  double value = 0.0;
};

struct BeliefEffect {
  std::string belief_id;
  double delta = 0.0;
};

struct Intent {
  std::string id;
  std::string label;
  std::vector<BeliefEffect> effects;
};

enum class Comparator { kAtLeast, kBelow };

struct Condition {
  std::string belief_id;
  Comparator comparator = Comparator::kAtLeast;
  double threshold = 0.0;

  bool holds(double value) const noexcept {
    return comparator == Comparator::kAtLeast ? value >= threshold : value < threshold;
  }
};

struct Desire {
  std::string id;
  std::string label;
  std::vector<Condition> activation;  // conjunction; empty means always active
  Phase phase = Phase::kRapport;
  std::vector<std::string> default_responses;
};

inline constexpr std::size_t kVariantsPerResponse = 4;

struct ResponseEntry {
  std::string intent_id;
  std::optional<std::string> desire_id;
  std::array<std::string, kVariantsPerResponse> variants;
};

struct AbortRules {
  std::string trust_belief = "trust";
  double trust_floor = 0.2;       // leave when trust < floor
  int violation_limit = 3;        // leave when violations > limit
  int unknown_streak_limit = 3;   // consecutive unknown turns that count as one violation
  std::string leave_message;
};

struct Scenario {
  std::string id;
  std::string persona;  // may contain {child_name}
  std::string greeting; // may contain {child_name}
  std::vector<std::string> child_name_pool;
  std::vector<Belief> beliefs;  // initial values
  std::vector<Intent> intents;
  std::vector<Desire> desires;  // priority order: earlier wins within a phase
  std::map<Phase, std::string> completion_desires;
  std::vector<ResponseEntry> responses;
  AbortRules abort;
  double nlu_tau = 0.6;

  const Intent* find_intent(std::string_view id) const;
  const Desire* find_desire(std::string_view id) const;
  const Belief* find_belief(std::string_view id) const;
  std::vector<std::string> intent_ids() const;

  /// Throws Error(InvalidScenario) naming the first broken invariant.
  void validate() const;
};

enum class EndReason { kNone, kLeft, kTraineeEnded, kTimeUp, kCompleted };

std::string_view to_string(EndReason r);
std::optional<EndReason> end_reason_from_string(std::string_view name);

struct BdiState {
  std::map<std::string, double> beliefs;
  std::string active_desire;
  Phase phase = Phase::kRapport;
  int violation_count = 0;
  int unknown_streak = 0;
  EndReason end_reason = EndReason::kNone;

  bool terminated() const noexcept { return end_reason != EndReason::kNone; }
  double belief(std::string_view id) const;

  friend bool operator==(const BdiState&, const BdiState&) = default;
};

}  // namespace vchild::bdi

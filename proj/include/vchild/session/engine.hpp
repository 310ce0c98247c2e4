#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "vchild/bdi/model.hpp"
#include "vchild/llm/client.hpp"
#include "vchild/llm/config.hpp"
#include "vchild/nlg/postprocess.hpp"
#include "vchild/nlg/prompt.hpp"
#include "vchild/nlu/embedding.hpp"
#include "vchild/nlu/vector_store.hpp"
#include "vchild/session/clock.hpp"
#include "vchild/session/session.hpp"

namespace vchild::session {

struct EngineConfig {
  PacingPolicy pacing;  // rule condition only
  double budget_s = 900.0;
  llm::LlmConfig llm;
  nlg::PostprocessOptions postprocess;
  std::size_t nlu_neighbours = 10;
};

/// Shared, read-only resources for running sessions.
struct EngineResources {
  std::vector<std::shared_ptr<const bdi::Scenario>> catalogue;
  std::shared_ptr<const nlu::VectorStore> store;
  std::shared_ptr<const nlu::Embedder> embedder;
  std::shared_ptr<const nlg::PromptBuilder> prompts;
  std::shared_ptr<llm::ChatClient> chat;  // may be null: rule condition only
  std::shared_ptr<Clock> clock;
};

/// Runs the per-turn pipeline for both conditions.
///
/// rule_based:     nearest-neighbour NLU -> BDI -> response bank, or the
///                 active desire's default reply for unknown input; paced.
/// llm_integrated: retrieval + LLM NLU -> BDI -> LLM NLG with the four bank
///                 variants as examples, or LLM bypass for unknown input. Any
///                 LLM failure falls back to the desire default reply.
///
/// The engine holds no per-session state; callers serialise turns per session.
class SessionEngine {
 public:
  SessionEngine(EngineResources resources, EngineConfig config);

  /// Throws NoScenarioAvailable when every scenario is excluded.
  Session create_session(Condition condition, const ScenarioSelector& selector, std::uint64_t seed,
                         std::string id) const;

  /// Throws SessionEnded or BudgetExhausted (the latter also ends the session).
  PostResult post_message(Session& session, std::string_view text) const;

  /// Archives the transcript and starts a fresh run under the same
  /// condition and budget clock. Throws RestartNotAllowed or BudgetExhausted.
  void restart_session(Session& session) const;

  /// Starts run `run` of a session on a given scenario; used by replay.
  Session resume_run(Condition condition, const std::string& scenario_id, std::uint64_t seed, int run,
                     double budget_s, std::string id) const;

  double remaining_s(const Session& session) const;
  const bdi::BdiModel& model(const std::string& scenario_id) const;
  const EngineConfig& config() const noexcept { return config_; }
  const EngineResources& resources() const noexcept { return res_; }
  std::vector<std::string> scenario_ids() const;

 private:
  struct Reply {
    std::string text;
    Annotations annotations;
  };

  void start_run(Session& session) const;
  Reply rule_turn(Session& session, std::string_view text, std::uint64_t turn_seed) const;
  Reply llm_turn(Session& session, std::string_view text, std::uint64_t turn_seed) const;
  Reply unknown_turn(Session& session, std::uint64_t turn_seed, const std::string& persona,
                     std::string_view text, bool use_llm) const;
  Reply default_reply(const Session& session, std::uint64_t turn_seed, std::string intent,
                      std::string detail) const;
  std::optional<std::string> call_llm(nlg::PromptKind kind, const nlg::PromptText& prompt,
                                      std::string* failure) const;
  std::string persona_for(const Session& session) const;
  void end(Session& session, bdi::EndReason reason) const;
  std::int64_t session_ms(const Session& session) const;

  EngineResources res_;
  EngineConfig config_;
  std::map<std::string, std::unique_ptr<bdi::BdiModel>, std::less<>> models_;
};

/// Per-turn seed from the session seed, run and turn.
std::uint64_t turn_seed(std::uint64_t session_seed, int run, int turn);

}  // namespace vchild::session

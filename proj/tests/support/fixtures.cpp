#include "fixtures.hpp"

#include <mutex>

#include "vchild/bdi/scenario_io.hpp"
#include "vchild/session/setup.hpp"

namespace vchild::testing {

std::filesystem::path source_path(const std::string& relative) {
  return std::filesystem::path(VCHILD_SOURCE_DIR) / relative;
}

std::shared_ptr<const bdi::Scenario> playground_scenario() {
  static const auto s = std::make_shared<const bdi::Scenario>(
      bdi::load_scenario(source_path("data/scenarios/school_bullying_playground.json")));
  return s;
}

std::shared_ptr<const bdi::Scenario> group_chat_scenario() {
  static const auto s = std::make_shared<const bdi::Scenario>(
      bdi::load_scenario(source_path("data/scenarios/online_group_chat.json")));
  return s;
}

const nlu::Dataset& sample_dataset() {
  static const nlu::Dataset d = nlu::load_dataset(source_path("data/intents_sample.jsonl"));
  return d;
}

session::EngineResources sample_resources(std::shared_ptr<session::VirtualClock>* clock_out) {
  static std::mutex mu;
  static std::optional<session::EngineResources> cached;
  std::lock_guard lock(mu);
  if (!cached) {
    cached = session::load_resources({source_path("data/scenarios"), source_path("data/intents_sample.jsonl"),
                                      source_path("templates")});
  }
  session::EngineResources res = *cached;
  auto clock = std::make_shared<session::VirtualClock>(session::Millis{1'000'000});
  res.clock = clock;
  if (clock_out) *clock_out = clock;
  return res;
}

std::string utterance_for(const std::string& intent_id) {
  for (const auto& ex : sample_dataset().examples) {
    if (ex.intent_id == intent_id) return ex.text;
  }
  throw std::runtime_error("no example for " + intent_id);
}

const std::vector<std::string>& golden_intents() {
  static const std::vector<std::string> script = {
      "greet", "explain_anonymity", "compliment_courage",
      "ask_what_happened", "bullying_what_they_do", "bullying_who", "bullying_why", "request_unknown_feeling",
      "reflect_feeling", "summarize_story",
      "ask_what_want", "propose_goal", "confirm_goal",
      "suggest_tell_teacher", "roleplay_conversation", "ask_who_trust", "encourage",
      "summarize_plan", "check_feeling_now", "invite_return",
  };
  return script;
}

llm::Matcher nlu_prompt_for(const std::string& trainee_text) {
  return llm::Matcher::all_of({"Allowed intent ids:", "Trainee message: \"" + trainee_text + "\""});
}

llm::Matcher nlg_prompt_for(const std::string& trainee_text) {
  return llm::Matcher::all_of({"Example replies the child could give:", "\"" + trainee_text + "\""});
}

llm::Matcher bypass_prompt_for(const std::string& trainee_text) {
  return llm::Matcher::all_of({"from the child's perspective", "\"" + trainee_text + "\""});
}

EngineFixture make_engine(bool pacing, std::shared_ptr<llm::MockChatClient> mock) {
  EngineFixture f;
  session::EngineResources res = sample_resources(&f.clock);
  f.mock = mock ? std::move(mock) : std::make_shared<llm::MockChatClient>();
  res.chat = f.mock;
  session::EngineConfig config;
  config.pacing.enabled = pacing;
  f.engine = std::make_unique<session::SessionEngine>(std::move(res), config);
  return f;
}

session::ScenarioSelector playground_only() {
  session::ScenarioSelector s;
  s.forced = "school_bullying_playground";
  return s;
}

}  // namespace vchild::testing

#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "vchild/bdi/model.hpp"
#include "vchild/llm/mock_client.hpp"
#include "vchild/nlu/dataset.hpp"
#include "vchild/session/engine.hpp"

namespace vchild::testing {

std::filesystem::path source_path(const std::string& relative);

/// The bundled scenarios, loaded once.
std::shared_ptr<const bdi::Scenario> playground_scenario();
std::shared_ptr<const bdi::Scenario> group_chat_scenario();

const nlu::Dataset& sample_dataset();

/// Bundled resources on a fresh virtual clock; `chat` left empty.
session::EngineResources sample_resources(std::shared_ptr<session::VirtualClock>* clock_out = nullptr);

/// A dataset sentence annotated with `intent_id`; exact matches classify at distance 0.
std::string utterance_for(const std::string& intent_id);

/// Trainee intents that walk the playground scenario through all five phases.
const std::vector<std::string>& golden_intents();

/// Mock matchers keyed on the trainee text in each prompt kind.
llm::Matcher nlu_prompt_for(const std::string& trainee_text);
llm::Matcher nlg_prompt_for(const std::string& trainee_text);
llm::Matcher bypass_prompt_for(const std::string& trainee_text);

/// Engine over the bundled resources with pacing off and the playground
/// scenario forced through `selector`.
struct EngineFixture {
  std::shared_ptr<session::VirtualClock> clock;
  std::shared_ptr<llm::MockChatClient> mock;
  std::unique_ptr<session::SessionEngine> engine;
};
EngineFixture make_engine(bool pacing = false, std::shared_ptr<llm::MockChatClient> mock = nullptr);

session::ScenarioSelector playground_only();

}  // namespace vchild::testing

#include "vchild/session/setup.hpp"

#include "vchild/bdi/scenario_io.hpp"
#include "vchild/error.hpp"
#include "vchild/nlu/dataset.hpp"

namespace vchild::session {

EngineResources load_resources(const ResourcePaths& paths, std::shared_ptr<const nlu::Embedder> embedder) {
  EngineResources res;
  res.catalogue = bdi::load_catalogue(paths.scenario_dir);
  if (res.catalogue.empty()) throw Error(Errc::NoScenarioAvailable, "no scenarios in " + paths.scenario_dir.string());
  if (!embedder) embedder = std::make_shared<nlu::TrigramEmbedder>();
  res.embedder = embedder;

  const nlu::Dataset dataset = nlu::load_dataset(paths.dataset);
  for (const auto& scenario : res.catalogue) nlu::check_intents(dataset, scenario->intent_ids());
  res.store = std::make_shared<const nlu::VectorStore>(nlu::build_store(dataset, *embedder));
  res.prompts = std::make_shared<const nlg::PromptBuilder>(nlg::TemplateSet::load(paths.templates_dir));
  res.clock = std::make_shared<SteadyClock>();
  return res;
}

}  // namespace vchild::session

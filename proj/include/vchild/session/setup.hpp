#pragma once

#include <filesystem>
#include <memory>

#include "vchild/session/engine.hpp"

namespace vchild::session {

struct ResourcePaths {
  std::filesystem::path scenario_dir;
  std::filesystem::path dataset;
  std::filesystem::path templates_dir;
};

/// Loads the catalogue, embeds the dataset into a store and loads the prompt
/// templates. `chat` and `clock` are left for the caller; the clock
/// defaults to a steady clock.
EngineResources load_resources(const ResourcePaths& paths, std::shared_ptr<const nlu::Embedder> embedder = nullptr);

}  // namespace vchild::session

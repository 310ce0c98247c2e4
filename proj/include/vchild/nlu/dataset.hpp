#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "vchild/nlu/embedding.hpp"
#include "vchild/nlu/vector_store.hpp"

namespace vchild::nlu {

struct AnnotatedExample {
  std::string text;
  std::string intent_id;
};

struct Dataset {
  std::vector<AnnotatedExample> examples;
  std::map<std::string, std::size_t> per_intent;  // counts
};

/// Reads line-delimited `{"text": ..., "intent": ...}` records. Blank lines
/// are skipped. Throws InvalidDataset with the offending line number.
Dataset load_dataset(const std::filesystem::path& path);
Dataset parse_dataset(std::istream& in);

/// Throws InvalidDataset when an example's intent is not in `known_intents`.
void check_intents(const Dataset& dataset, std::span<const std::string> known_intents);

/// Embeds every example in load order.
VectorStore build_store(const Dataset& dataset, const Embedder& embedder);

}  // namespace vchild::nlu

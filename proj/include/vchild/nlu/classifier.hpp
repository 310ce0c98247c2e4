#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vchild/nlg/prompt.hpp"
#include "vchild/nlu/embedding.hpp"
#include "vchild/nlu/vector_store.hpp"

namespace vchild::nlu {

enum class DecisionMethod { kRuleKnn, kLlm };

std::string_view to_string(DecisionMethod m);

struct IntentDecision {
  std::string outcome;  // intent id or "unknown"
  DecisionMethod method = DecisionMethod::kRuleKnn;
  std::vector<Neighbour> neighbours;

  bool known() const { return outcome != nlg::kUnknownIntent; }
};

inline constexpr double kDefaultTau = 0.6;
inline constexpr std::size_t kPromptNeighbours = 10;

/// Nearest-neighbour classification: the closest example's intent when its
/// distance is at most `tau`, otherwise "unknown". Throws EmptyInput or EmptyStore.
IntentDecision classify_rule(const VectorStore& store, const Embedder& embedder, std::string_view text,
                             double tau = kDefaultTau);

/// Neighbours for the LLM classification prompt (at most `k`, clamped to the store size).
std::vector<nlg::NluExample> retrieve_examples(const VectorStore& store, const Embedder& embedder,
                                               std::string_view text, std::size_t k = kPromptNeighbours,
                                               std::vector<Neighbour>* hits = nullptr);

/// Reads an intent id out of free LLM text. Tokens are runs of
/// [A-Za-z0-9_], compared case-insensitively. Exactly one distinct known id
/// must appear; anything else, including none or several, yields "unknown".
std::string parse_intent_reply(std::string_view llm_text, std::span<const std::string> known_intents);

}  // namespace vchild::nlu

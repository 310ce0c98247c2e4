#include "vchild/nlu/classifier.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "vchild/error.hpp"
#include "vchild/text.hpp"

namespace vchild::nlu {

std::string_view to_string(DecisionMethod m) {
  return m == DecisionMethod::kRuleKnn ? "rule_knn" : "llm";
}

IntentDecision classify_rule(const VectorStore& store, const Embedder& embedder, std::string_view text,
                             double tau) {
  if (store.empty()) throw Error(Errc::EmptyStore, "vector store is empty");
  const EmbeddingVector query = embedder.embed(text);
  IntentDecision decision;
  decision.method = DecisionMethod::kRuleKnn;
  decision.neighbours = store.knn(query.values, std::min(kPromptNeighbours, store.size()));
  const Neighbour& best = decision.neighbours.front();
  decision.outcome = best.distance <= tau ? store.record(best.index).intent_id : std::string(nlg::kUnknownIntent);
  return decision;
}

std::vector<nlg::NluExample> retrieve_examples(const VectorStore& store, const Embedder& embedder,
                                               std::string_view text, std::size_t k,
                                               std::vector<Neighbour>* hits) {
  const EmbeddingVector query = embedder.embed(text);
  auto neighbours = store.knn(query.values, std::min(k, store.size()));
  std::vector<nlg::NluExample> examples;
  examples.reserve(neighbours.size());
  for (const auto& n : neighbours) {
    const auto& rec = store.record(n.index);
    examples.push_back({rec.text, rec.intent_id});
  }
  if (hits) *hits = std::move(neighbours);
  return examples;
}

std::string parse_intent_reply(std::string_view llm_text, std::span<const std::string> known_intents) {
  std::set<std::string> known;
  for (const auto& id : known_intents) known.insert(text::to_lower_ascii(id));

  std::set<std::string> found;
  std::string token;
  auto flush = [&] {
    if (!token.empty() && known.count(token)) found.insert(token);
    token.clear();
  };
  for (char c : llm_text) {
    auto u = static_cast<unsigned char>(c);
    if (std::isalnum(u) || c == '_') {
      token.push_back(static_cast<char>(std::tolower(u)));
    } else {
      flush();
    }
  }
  flush();

  if (found.size() != 1) return std::string(nlg::kUnknownIntent);
  // Return the id with its canonical spelling.
  for (const auto& id : known_intents) {
    if (text::to_lower_ascii(id) == *found.begin()) return id;
  }
  return std::string(nlg::kUnknownIntent);
}

}  // namespace vchild::nlu

#include "vchild/nlu/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

#include "vchild/error.hpp"
#include "vchild/text.hpp"

namespace vchild::nlu {

Dataset parse_dataset(std::istream& in) {
  Dataset ds;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    auto fail = [&](const std::string& what) -> void {
      throw Error(Errc::InvalidDataset, "line " + std::to_string(line_no) + ": " + what);
    };
    nlohmann::json rec;
    try {
      rec = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      fail(e.what());
    }
    if (!rec.is_object() || !rec.contains("text") || !rec.contains("intent") || !rec["text"].is_string() ||
        !rec["intent"].is_string()) {
      fail("expected {\"text\": string, \"intent\": string}");
    }
    AnnotatedExample ex{rec["text"].get<std::string>(), rec["intent"].get<std::string>()};
    if (text::trim(ex.text).empty() || ex.intent_id.empty()) fail("empty text or intent");
    ++ds.per_intent[ex.intent_id];
    ds.examples.push_back(std::move(ex));
  }
  return ds;
}

Dataset load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::InvalidDataset, "cannot open dataset " + path.string());
  try {
    return parse_dataset(in);
  } catch (const Error& e) {
    throw Error(Errc::InvalidDataset, path.string() + ": " + e.what());
  }
}

void check_intents(const Dataset& dataset, std::span<const std::string> known_intents) {
  std::set<std::string_view> known(known_intents.begin(), known_intents.end());
  for (const auto& [intent, count] : dataset.per_intent) {
    if (!known.count(intent)) {
      throw Error(Errc::InvalidDataset, "dataset intent '" + intent + "' is not defined by the scenario");
    }
  }
}

VectorStore build_store(const Dataset& dataset, const Embedder& embedder) {
  std::vector<std::string> texts;
  texts.reserve(dataset.examples.size());
  for (const auto& ex : dataset.examples) texts.push_back(ex.text);
  auto vectors = embed_batch(embedder, texts);
  std::vector<ExampleRecord> records;
  records.reserve(texts.size());
  for (std::size_t i = 0; i < texts.size(); ++i) {
    records.push_back({dataset.examples[i].text, dataset.examples[i].intent_id, std::move(vectors[i])});
  }
  return VectorStore(std::move(records));
}

}  // namespace vchild::nlu

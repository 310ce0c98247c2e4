#include <benchmark/benchmark.h>

#include <map>
#include <random>
#include <string>
#include <vector>

#include "vchild/nlu/embedding.hpp"
#include "vchild/nlu/vector_store.hpp"

using namespace vchild::nlu;

namespace {

std::vector<std::string> random_texts(std::size_t n, std::uint64_t seed) {
  static const std::vector<std::string> words = {"why", "feel", "school", "friend", "bullied", "hello", "help",
                                                 "sad", "teacher", "mum", "group", "chat", "brave", "tell", "name"};
  std::mt19937_64 gen(seed);
  std::vector<std::string> out(n);
  for (auto& t : out) {
    for (int w = 0; w < 4 + static_cast<int>(gen() % 8); ++w) t += words[gen() % words.size()] + " ";
  }
  return out;
}

const VectorStore& store_of(std::size_t n) {
  static std::map<std::size_t, VectorStore> cache;
  auto it = cache.find(n);
  if (it == cache.end()) {
    TrigramEmbedder embedder;
    const auto texts = random_texts(n, n);
    const auto vectors = embed_batch(embedder, texts);
    std::vector<ExampleRecord> records;
    for (std::size_t i = 0; i < n; ++i) records.push_back({texts[i], "intent", vectors[i]});
    it = cache.emplace(n, VectorStore(std::move(records))).first;
  }
  return it->second;
}

void BM_Knn(benchmark::State& state) {
  const auto& store = store_of(static_cast<std::size_t>(state.range(0)));
  const auto q = TrigramEmbedder().embed("why are they being mean to you at school").values;
  for (auto _ : state) benchmark::DoNotOptimize(store.knn(q, 10));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_KnnSerial(benchmark::State& state) {
  const auto& store = store_of(static_cast<std::size_t>(state.range(0)));
  const auto q = TrigramEmbedder().embed("why are they being mean to you at school").values;
  for (auto _ : state) benchmark::DoNotOptimize(store.knn_serial(q, 10));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_EmbedBatch(benchmark::State& state) {
  const auto texts = random_texts(static_cast<std::size_t>(state.range(0)), 7);
  TrigramEmbedder embedder;
  for (auto _ : state) benchmark::DoNotOptimize(embed_batch(embedder, texts));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_EmbedSerial(benchmark::State& state) {
  const auto texts = random_texts(static_cast<std::size_t>(state.range(0)), 7);
  TrigramEmbedder embedder;
  for (auto _ : state) {
    std::vector<EmbeddingVector> out;
    out.reserve(texts.size());
    for (const auto& t : texts) out.push_back(embedder.embed(t));
    benchmark::DoNotOptimize(out);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_Knn)->Arg(1000)->Arg(10000)->Arg(50000);
BENCHMARK(BM_KnnSerial)->Arg(1000)->Arg(10000)->Arg(50000);
BENCHMARK(BM_EmbedBatch)->Arg(1000)->Arg(10000);
BENCHMARK(BM_EmbedSerial)->Arg(1000)->Arg(10000);

BENCHMARK_MAIN();

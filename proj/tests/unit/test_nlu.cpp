#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "vchild/error.hpp"
#include "vchild/nlu/classifier.hpp"
#include "vchild/nlu/dataset.hpp"
#include "vchild/nlu/embedding.hpp"
#include "vchild/nlu/vector_store.hpp"

using namespace vchild;
using namespace vchild::nlu;

namespace {

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return Errc::InvalidInput;
}

std::vector<ExampleRecord> random_records(std::size_t n, std::size_t dim, std::uint64_t seed, bool with_dupes) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<float> z;
  std::vector<ExampleRecord> out;
  for (std::size_t i = 0; i < n; ++i) {
    ExampleRecord r;
    r.text = "r" + std::to_string(i);
    r.intent_id = "i" + std::to_string(i % 7);
    if (with_dupes && i > 0 && i % 10 == 0) {
      r.vector = out[i - 3].vector;  // exact ties
    } else {
      r.vector.values.resize(dim);
      for (auto& v : r.vector.values) v = z(gen);
      normalise(r.vector.values);
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<std::vector<float>> rows_of(const VectorStore& store) {
  std::vector<std::vector<float>> rows;
  for (std::size_t i = 0; i < store.size(); ++i) {
    auto r = store.row(i);
    rows.emplace_back(r.begin(), r.end());
  }
  return rows;
}

const VectorStore& sample_store() {
  static const VectorStore store = build_store(vchild::testing::sample_dataset(), TrigramEmbedder());
  return store;
}

}  // namespace

TEST(Embedding, DeterministicAndCaseFolded) {
  TrigramEmbedder e;
  EXPECT_EQ(e.dim(), 512u);
  EXPECT_EQ(e.embed("why are you sad?"), e.embed("why are you sad?"));
  EXPECT_EQ(e.embed("abc"), e.embed("ABC"));
  double norm = 0.0;
  for (float v : e.embed("Hello there, how are you?").values) norm += double(v) * v;
  EXPECT_NEAR(std::sqrt(norm), 1.0, 1e-6);
}

TEST(Embedding, BlankTextRejected) {
  TrigramEmbedder e;
  EXPECT_EQ(code_of([&] { e.embed(""); }), Errc::EmptyInput);
  EXPECT_EQ(code_of([&] { e.embed(" \t\n"); }), Errc::EmptyInput);
  EXPECT_NO_THROW(e.embed("?!"));  // punctuation only still embeds
}

TEST(Embedding, SimilarityOrderingAgreesWithTrigramOverlap) {
  TrigramEmbedder e;
  const std::string q = "why are you bullied", near = "why are you being bullied", far = "what is your name";
  const double c_near = cosine(e.embed(q), e.embed(near));
  const double c_far = cosine(e.embed(q), e.embed(far));
  const double j_near = oracle::jaccard(oracle::trigram_set(q), oracle::trigram_set(near));
  const double j_far = oracle::jaccard(oracle::trigram_set(q), oracle::trigram_set(far));
  EXPECT_GT(j_near, j_far);
  EXPECT_GT(c_near, c_far);
}

TEST(Embedding, CosineTracksJaccardOnDatasetPairs) {
  // Rank agreement between embedding cosine and exact trigram Jaccard over
  // random dataset pairs; hashing collisions may only flip near-ties.
  TrigramEmbedder e;
  const auto& ex = vchild::testing::sample_dataset().examples;
  std::mt19937_64 gen(17);
  int agree = 0, total = 0;
  for (int i = 0; i < 2000; ++i) {
    const auto& a = ex[gen() % ex.size()].text;
    const auto& b = ex[gen() % ex.size()].text;
    const auto& c = ex[gen() % ex.size()].text;
    const double jb = oracle::jaccard(oracle::trigram_set(a), oracle::trigram_set(b));
    const double jc = oracle::jaccard(oracle::trigram_set(a), oracle::trigram_set(c));
    if (std::fabs(jb - jc) < 0.15) continue;
    ++total;
    agree += (cosine(e.embed(a), e.embed(b)) > cosine(e.embed(a), e.embed(c))) == (jb > jc);
  }
  ASSERT_GT(total, 100);
  EXPECT_GE(static_cast<double>(agree) / total, 0.97);
}

TEST(Embedding, BatchMatchesSingle) {
  TrigramEmbedder e;
  std::vector<std::string> texts;
  for (const auto& ex : vchild::testing::sample_dataset().examples) texts.push_back(ex.text);
  auto batch = embed_batch(e, texts);
  ASSERT_EQ(batch.size(), texts.size());
  for (std::size_t i = 0; i < texts.size(); ++i) EXPECT_EQ(batch[i], e.embed(texts[i]));
  texts.push_back("   ");
  EXPECT_EQ(code_of([&] { embed_batch(e, texts); }), Errc::EmptyInput);
}

TEST(VectorStore, ExactVectorRanksFirst) {
  const auto& store = sample_store();
  for (std::size_t i = 0; i < store.size(); i += 17) {
    auto hits = store.knn(store.row(i), 3);
    EXPECT_EQ(hits[0].distance, 0.0);
    EXPECT_EQ(store.record(hits[0].index).text, store.record(i).text);
  }
}

TEST(VectorStore, KnnMatchesBruteForceForAllK) {
  for (std::size_t n : {1u, 7u, 100u, 5000u}) {
    VectorStore store(random_records(n, 32, n, true));
    const auto rows = rows_of(store);
    std::mt19937_64 gen(n + 1);
    std::normal_distribution<float> z;
    for (int q = 0; q < 20; ++q) {
      std::vector<float> query(32);
      if (q % 4 == 0) {
        query = rows[gen() % n];
      } else {
        for (auto& v : query) v = z(gen);
      }
      const auto oracle_rank = oracle::brute_force_rank(rows, query);
      for (std::size_t k : {std::size_t{1}, std::size_t{2}, std::size_t{5}, std::size_t{10}, std::size_t{100}, n}) {
        if (k > n) continue;
        const auto hits = store.knn(query, k);
        const auto serial = store.knn_serial(query, k);
        ASSERT_EQ(hits.size(), k);
        for (std::size_t i = 0; i < k; ++i) {
          ASSERT_EQ(hits[i].index, oracle_rank[i].second) << "n=" << n << " k=" << k << " i=" << i;
          ASSERT_NEAR(hits[i].distance, oracle_rank[i].first, 1e-9);
          ASSERT_EQ(serial[i].index, hits[i].index);
          ASSERT_EQ(serial[i].distance, hits[i].distance);
        }
      }
    }
  }
}

TEST(VectorStore, TiesBrokenByLoadOrder) {
  std::vector<ExampleRecord> recs(3);
  for (auto& r : recs) {
    r.intent_id = "x";
    r.vector.values = {1.0f, 0.0f};
  }
  VectorStore store(recs);
  auto hits = store.knn(std::vector<float>{0.0f, 1.0f}, 3);
  EXPECT_EQ(hits[0].index, 0u);
  EXPECT_EQ(hits[1].index, 1u);
  EXPECT_EQ(hits[2].index, 2u);
}

TEST(VectorStore, Errors) {
  VectorStore empty({});
  EXPECT_EQ(code_of([&] { empty.knn(std::vector<float>{1.0f}, 1); }), Errc::EmptyStore);
  VectorStore store(random_records(5, 4, 1, false));
  std::vector<float> q(4, 0.5f);
  EXPECT_EQ(code_of([&] { store.knn(q, 0); }), Errc::BadK);
  EXPECT_EQ(code_of([&] { store.knn(q, 6); }), Errc::BadK);
  EXPECT_EQ(code_of([&] { store.knn(std::vector<float>(3, 0.f), 1); }), Errc::InvalidInput);
  auto bad = random_records(2, 4, 1, false);
  bad[1].vector.values.pop_back();
  EXPECT_EQ(code_of([&] { VectorStore s(bad); }), Errc::InvalidInput);
}

TEST(Classifier, ExactSentencesClassifyAsAnnotated) {
  const auto& store = sample_store();
  TrigramEmbedder e;
  for (const auto& ex : vchild::testing::sample_dataset().examples) {
    auto d = classify_rule(store, e, ex.text, kDefaultTau);
    EXPECT_EQ(d.method, DecisionMethod::kRuleKnn);
    EXPECT_EQ(d.neighbours.front().distance, 0.0);
    // Duplicate sentences with different labels would make this ambiguous; the sample has none.
    EXPECT_EQ(d.outcome, ex.intent_id) << ex.text;
  }
}

TEST(Classifier, HowDoesThatMakeYouFeel) {
  TrigramEmbedder e;
  EXPECT_EQ(classify_rule(sample_store(), e, "How does that make you feel?").outcome, "request_unknown_feeling");
}

TEST(Classifier, GibberishIsUnknown) {
  TrigramEmbedder e;
  const auto d = classify_rule(sample_store(), e, "zqxv pwmf", 0.8);
  EXPECT_EQ(d.outcome, "unknown");
  const auto q = e.embed("zqxv pwmf");
  const auto rank = oracle::brute_force_rank(rows_of(sample_store()), q.values);
  EXPECT_GT(rank.front().first, 0.8);
}

TEST(Classifier, TauMonotone) {
  TrigramEmbedder e;
  const auto& ex = vchild::testing::sample_dataset().examples;
  const std::vector<std::string> probes = {"why do they pick on you", "hello!", "what do you want me to do",
                                           "zqxv pwmf", "tell me more about school", "that sounds really hard"};
  for (const auto& p : probes) {
    std::string prev = "unknown";
    for (double tau = 0.0; tau <= 2.0; tau += 0.05) {
      const auto d = classify_rule(sample_store(), e, p, tau);
      if (prev != "unknown") {
        EXPECT_EQ(d.outcome, prev) << p << " tau=" << tau;
      }
      prev = d.outcome;
    }
  }
  (void)ex;
}

TEST(Classifier, EmptyInputAndStore) {
  TrigramEmbedder e;
  EXPECT_EQ(code_of([&] { classify_rule(sample_store(), e, "   "); }), Errc::EmptyInput);
  VectorStore empty({});
  EXPECT_EQ(code_of([&] { classify_rule(empty, e, "hi"); }), Errc::EmptyStore);
}

TEST(Classifier, ParaphraseRetrievesBullyingWhy) {
  TrigramEmbedder e;
  const auto rows = rows_of(sample_store());
  for (const std::string q : {"why are you getting bullied?", "why are they bullying you", "Why are you bullied?"}) {
    std::vector<Neighbour> hits;
    const auto ex = retrieve_examples(sample_store(), e, q, 10, &hits);
    ASSERT_EQ(ex.size(), 10u);
    const auto rank = oracle::brute_force_rank(rows, e.embed(q).values);
    bool found = false;
    for (std::size_t i = 0; i < ex.size(); ++i) {
      EXPECT_EQ(hits[i].index, rank[i].second);
      EXPECT_EQ(ex[i].text, sample_store().record(rank[i].second).text);
      found |= ex[i].text == "why are you being bullied?";
    }
    EXPECT_TRUE(found) << q;
    EXPECT_EQ(ex.front().intent_id, "bullying_why") << q;
  }
}

TEST(Classifier, RetrieveClampsK) {
  TrigramEmbedder e;
  const auto all = retrieve_examples(sample_store(), e, "hi", 100000);
  EXPECT_EQ(all.size(), sample_store().size());
}

TEST(Classifier, ParseIntentReply) {
  const std::vector<std::string> known = {"bullying_why", "request_unknown_feeling", "greet"};
  EXPECT_EQ(parse_intent_reply("bullying_why", known), "bullying_why");
  EXPECT_EQ(parse_intent_reply("I think it is: Request_Unknown_Feeling.", known), "request_unknown_feeling");
  EXPECT_EQ(parse_intent_reply("none of these fit", known), "unknown");
  EXPECT_EQ(parse_intent_reply("", known), "unknown");
  EXPECT_EQ(parse_intent_reply("greet or bullying_why", known), "unknown");
  EXPECT_EQ(parse_intent_reply("greet. Final answer: greet", known), "greet");
  EXPECT_EQ(parse_intent_reply("ask_favourite_colour", known), "unknown");
  EXPECT_EQ(parse_intent_reply("unknown", known), "unknown");
}

TEST(Classifier, ParseNeverLeavesKnownSet) {
  const std::vector<std::string> known = {"a_b", "c", "greet"};
  std::mt19937_64 gen(2);
  const std::string alphabet = "abcg_ret .,:!AB\n";
  for (int i = 0; i < 5000; ++i) {
    std::string s;
    for (int j = 0, n = gen() % 20; j < n; ++j) s += alphabet[gen() % alphabet.size()];
    const auto out = parse_intent_reply(s, known);
    EXPECT_TRUE(out == "unknown" || std::find(known.begin(), known.end(), out) != known.end()) << s;
  }
}

TEST(Dataset, LoadsSampleAndCountsPerIntent) {
  const auto& d = vchild::testing::sample_dataset();
  EXPECT_GE(d.examples.size(), 200u);
  std::size_t total = 0;
  for (const auto& [id, n] : d.per_intent) total += n;
  EXPECT_EQ(total, d.examples.size());
  EXPECT_EQ(d.per_intent.size(), 38u);
  EXPECT_NO_THROW(check_intents(d, vchild::testing::playground_scenario()->intent_ids()));
}

TEST(Dataset, RejectsMalformedLines) {
  std::istringstream bad("{\"text\": \"hi\", \"intent\": \"greet\"}\n\n{\"text\": \"hi\"}\n");
  try {
    parse_dataset(bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::InvalidDataset);
    EXPECT_NE(std::string(e.what()).find("3"), std::string::npos);
  }
  std::istringstream ok("{\"text\": \"hi\", \"intent\": \"nope\"}\n");
  const auto d = parse_dataset(ok);
  const std::vector<std::string> known = {"greet"};
  EXPECT_EQ(code_of([&] { check_intents(d, known); }), Errc::InvalidDataset);
}

TEST(Dataset, StoreBuildIsOrderStable) {
  TrigramEmbedder e;
  const auto a = build_store(vchild::testing::sample_dataset(), e);
  const auto b = build_store(vchild::testing::sample_dataset(), e);
  for (const std::string q : {"hello", "what happened?", "zzz"}) {
    EXPECT_EQ(classify_rule(a, e, q).outcome, classify_rule(b, e, q).outcome);
    auto ha = a.knn(e.embed(q).values, 5), hb = b.knn(e.embed(q).values, 5);
    for (int i = 0; i < 5; ++i) EXPECT_EQ(ha[i].index, hb[i].index);
  }
}

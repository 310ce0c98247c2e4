// Prints one PASS/FAIL line per acceptance criterion; exits non-zero on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "vchild/nlu/dataset.hpp"
#include "vchild/session/log.hpp"
#include "vchild/session/manager.hpp"
#include "vchild/stats/agreement.hpp"
#include "vchild/stats/bayes.hpp"

using namespace vchild;
using namespace vchild::session;
using namespace vchild::testing;
using WallClock = std::chrono::steady_clock;
using namespace std::chrono_literals;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << "[failed: " << what << "] ";
    }
  }
};

int failures = 0;

void criterion(const std::string& name, const std::function<void(Outcome&)>& body) {
  Outcome out;
  try {
    body(out);
  } catch (const std::exception& e) {
    out.ok = false;
    out.detail << "[exception: " << e.what() << "]";
  }
  if (!out.ok) ++failures;
  std::cout << (out.ok ? "PASS " : "FAIL ") << name << ": " << out.detail.str() << std::endl;
}

double seconds_since(WallClock::time_point t0) {
  return std::chrono::duration<double>(WallClock::now() - t0).count();
}

stats::PairedSample sample_for(double mean, double t, std::uint64_t seed) {
  auto [a, b] = oracle::paired_with_t(mean, t, 37, seed);
  return {a, b};
}

const nlg::ReplySource kRuleSources[] = {nlg::ReplySource::kRuleBank, nlg::ReplySource::kDefaultDesire};

std::vector<nlg::ReplySource> reply_sources(const Session& s) {
  std::vector<nlg::ReplySource> out;
  for (const auto& m : s.transcript) {
    if (m.role == Role::kChild && m.annotations->source != nlg::ReplySource::kOpening) {
      out.push_back(m.annotations->source);
    }
  }
  return out;
}

void posterior_reproduction(Outcome& out) {
  const struct {
    const char* name;
    double mean, t, reported;
  } rows[] = {{"HLB", 0.44, 2.10, 0.975},
              {"NB", 0.33, 1.38, 0.905},
              {"Engagement", 0.17, 1.07, 0.845},
              {"Attitude", 0.73, 2.46, 0.988},
              {"Overall", 0.481, 2.57, 0.991}};
  const auto t0 = WallClock::now();
  for (const auto& row : rows) {
    const auto r = stats::bayes_paired_t(sample_for(row.mean, row.t, 1));
    out.detail << row.name << "=" << r.posterior_prob << " ";
    out.require(std::fabs(r.posterior_prob - row.reported) <= 0.015, row.name);
  }
  const double secs = seconds_since(t0);
  out.detail << "time=" << secs << "s";
  out.require(secs < 1.0, "runtime");
}

void engagement_hdi(Outcome& out) {
  const auto r = stats::bayes_paired_t(sample_for(0.17, 1.07, 2));
  out.detail << "HDI=[" << r.hdi_low << ", " << r.hdi_high << "]";
  out.require(std::fabs(r.hdi_low + 0.149) <= 0.06, "lower endpoint");
  out.require(std::fabs(r.hdi_high - 0.465) <= 0.06, "upper endpoint");
}

void preference_test(Outcome& out) {
  const auto t0 = WallClock::now();
  const auto r = stats::bayes_binomial(26, 37);
  const double secs = seconds_since(t0);
  out.detail << "P=" << r.posterior_prob << " interval=[" << r.hdi_low << ", " << r.hdi_high << "] time=" << secs
             << "s";
  out.require(r.posterior_prob >= 0.985, "posterior");
  out.require(std::fabs(r.hdi_low - 0.53) <= 0.02 && std::fabs(r.hdi_high - 0.84) <= 0.02, "interval");
  out.require(secs < 1.0, "runtime");
}

void agreement_suite(Outcome& out) {
  const std::vector<std::string> unanimous = {"a", "b", "c", "a", "b"};
  out.require(stats::cohen_kappa(unanimous, unanimous) == 1.0, "cohen unanimous");
  out.require(stats::fleiss_kappa({{3, 0, 0}, {0, 3, 0}, {0, 0, 3}, {3, 0, 0}}, 3) == 1.0, "fleiss unanimous");
  out.require(stats::icc({{1, 1, 1}, {4, 4, 4}, {2, 2, 2}}) == 1.0, "icc unanimous");

  std::mt19937_64 gen(11);
  std::normal_distribution<double> z;
  const int n = 10000;
  std::vector<std::string> a(n), b(n);
  std::vector<std::vector<std::string>> labels(n, std::vector<std::string>(3));
  std::vector<std::vector<double>> scores(n, std::vector<double>(3));
  for (int i = 0; i < n; ++i) {
    a[i] = std::to_string(gen() % 4);
    b[i] = std::to_string(gen() % 4);
    for (auto& l : labels[i]) l = std::to_string(gen() % 4);
    for (auto& s : scores[i]) s = z(gen);
  }
  const double ck = stats::cohen_kappa(a, b);
  const double fk = stats::fleiss_kappa(stats::tally_labels(labels), 3);
  const double ic = stats::icc(scores);
  out.detail << "independent cohen=" << ck << " fleiss=" << fk << " icc=" << ic << " ";
  out.require(std::fabs(ck) < 0.05 && std::fabs(fk) < 0.05 && std::fabs(ic) < 0.05, "independent raters");

  const std::vector<std::string> p = {"x", "x", "y", "y"}, q = {"x", "y", "x", "y"};
  const double hand = stats::cohen_kappa(p, q);
  const double fl = stats::fleiss_kappa({{2, 2}, {2, 2}}, 4);
  out.detail << "hand cohen=" << hand << " fleiss=" << fl;
  out.require(std::fabs(hand) <= 1e-9, "hand cohen");
  out.require(std::fabs(fl + 1.0 / 3.0) <= 1e-9, "hand fleiss");
}

void pipeline_routing(Outcome& out) {
  const std::string feel = "How does that make you feel?";
  const std::string odd = "do you like pineapple on pizza?";
  const std::string broken = "can you tell me about your day?";
  const std::string rude = "just do what i tell you";
  auto mock = std::make_shared<llm::MockChatClient>();
  mock->add(nlu_prompt_for(feel), {"request_unknown_feeling"});
  mock->add(nlg_prompt_for(feel), {"it makes me really sad."});
  mock->add(nlu_prompt_for(odd), {"unknown"});
  mock->add(bypass_prompt_for(odd), {"um... i don't know. why?"});
  mock->add(nlu_prompt_for(broken), llm::ScriptedReply::failure());
  mock->add(nlu_prompt_for(rude), {"give_orders"});
  mock->add(nlg_prompt_for(rude), {"ok..."});
  // Trust rose on the empathic turn, so collapsing it takes two rude turns.
  const std::vector<std::string> script = {feel, odd, broken, rude, rude};

  auto f = make_engine(false, mock);
  auto s = f.engine->create_session(Condition::kLlmIntegrated, playground_only(), 1, "routing");
  for (const auto& line : script) f.engine->post_message(s, line);
  const std::vector<nlg::ReplySource> want = {nlg::ReplySource::kLlmNlg, nlg::ReplySource::kLlmBypass,
                                              nlg::ReplySource::kDefaultDesire, nlg::ReplySource::kLlmNlg,
                                              nlg::ReplySource::kLeave};
  const auto got = reply_sources(s);
  out.detail << "llm sources:";
  for (auto src : got) out.detail << " " << nlg::to_string(src);
  out.require(got == want, "llm condition sources");
  out.require(s.end_reason() == bdi::EndReason::kLeft, "llm condition ends with leave");

  auto rule_mock = std::make_shared<llm::MockChatClient>();
  auto g = make_engine(false, rule_mock);
  auto r = g.engine->create_session(Condition::kRuleBased, playground_only(), 1, "routing");
  for (const auto& line : script) g.engine->post_message(r, line);
  out.detail << "; rule sources:";
  bool only_rule = true;
  for (auto src : reply_sources(r)) {
    out.detail << " " << nlg::to_string(src);
    only_rule &= std::find(std::begin(kRuleSources), std::end(kRuleSources), src) != std::end(kRuleSources);
  }
  out.detail << "; mock calls=" << rule_mock->calls();
  out.require(only_rule, "rule condition sources");
  out.require(rule_mock->calls() == 0, "no LLM calls under rule condition");
}

void retrieval_oracle(Outcome& out) {
  // Dataset sentences plus numbered variants give a store well above 1,000 records.
  const auto& ds = sample_dataset();
  nlu::Dataset big;
  for (int copy = 0; copy < 6; ++copy) {
    for (const auto& ex : ds.examples) {
      big.examples.push_back({copy == 0 ? ex.text : ex.text + " variant " + std::to_string(copy), ex.intent_id});
    }
  }
  nlu::TrigramEmbedder embedder;
  const auto store = nlu::build_store(big, embedder);
  std::vector<std::vector<float>> rows;
  for (const auto& rec : store.records()) rows.push_back(rec.vector.values);
  out.detail << "store=" << store.size() << " ";
  out.require(store.size() >= 1000, "store size");

  std::mt19937_64 gen(5);
  const std::vector<std::string> words = {"why", "feel", "school", "friend", "bullied", "hello", "help", "sad",
                                          "teacher", "mum", "group", "chat", "brave", "you", "tell"};
  const std::size_t ks[] = {1, 5, 10, store.size()};
  std::size_t agree = 0, total = 0, exact_ok = 0, exact_total = 0;
  for (int qi = 0; qi < 1000; ++qi) {
    std::string text;
    if (qi % 4 == 0) {
      text = store.record(gen() % store.size()).text;
    } else {
      for (int w = 0; w < 2 + static_cast<int>(gen() % 5); ++w) text += words[gen() % words.size()] + " ";
    }
    const auto q = embedder.embed(text).values;
    const auto oracle_rank = oracle::brute_force_rank(rows, q);
    for (std::size_t k : ks) {
      const auto got = store.knn(q, k);
      bool same = got.size() == k;
      for (std::size_t i = 0; same && i < k; ++i) {
        same = got[i].index == oracle_rank[i].second && got[i].distance == oracle_rank[i].first;
      }
      agree += same;
      ++total;
    }
    if (qi % 4 == 0) {
      const auto top = store.knn(q, 1).front();
      exact_ok += top.distance == 0.0 && store.record(top.index).text == text;
      ++exact_total;
    }
  }
  out.detail << "knn agreement=" << agree << "/" << total << " exact-text rank1 distance0=" << exact_ok << "/"
             << exact_total;
  out.require(agree == total, "knn equals oracle");
  out.require(exact_ok == exact_total, "exact text at distance 0");
}

void determinism_replay(Outcome& out) {
  const auto dir = std::filesystem::temp_directory_path() / ("vchild_accept_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  std::shared_ptr<VirtualClock> clock;
  auto res = sample_resources(&clock);
  EngineConfig config;  // pacing on
  SessionManager mgr(std::make_shared<const SessionEngine>(res, config), ManagerOptions{dir});
  auto s = mgr.create(Condition::kRuleBased, {}, 20240917);
  const std::vector<std::string> lines = {"hi", "what's your name?", "How does that make you feel?",
                                          "qqq", "what happened?", "who is doing this?", "that sounds hard",
                                          "you are very brave to tell me"};
  for (const auto& l : lines) {
    if (mgr.snapshot(s.id).status != SessionStatus::kActive) break;
    clock->advance(4s);
    mgr.post(s.id, l);
  }
  const auto log = load_log(dir / log_file_name(s.id, 0));
  const auto report = replay(log, sample_resources(), config);
  out.detail << "child messages=" << report.child_messages << " trainee messages=" << report.trainee_messages
             << " mismatches=" << report.mismatches.size();
  out.require(report.child_messages > 1, "conversation has replies");
  out.require(report.identical(), "byte-identical replay");
  std::filesystem::remove_all(dir);
}

void five_phase_traversal(Outcome& out) {
  auto f = make_engine();
  auto s = f.engine->create_session(Condition::kRuleBased, playground_only(), 3, "golden");
  std::vector<int> phases = {bdi::ordinal(s.bdi.phase)};
  for (const auto& intent : golden_intents()) {
    if (s.status != SessionStatus::kActive) break;
    f.engine->post_message(s, utterance_for(intent));
    phases.push_back(bdi::ordinal(s.bdi.phase));
  }
  const bool monotone = std::is_sorted(phases.begin(), phases.end());
  std::set<int> visited(phases.begin(), phases.end());
  out.detail << "phases visited=" << visited.size() << " end=" << bdi::to_string(s.end_reason()) << " ";
  out.require(monotone, "monotone phases");
  out.require(visited == std::set<int>{1, 2, 3, 4, 5}, "all five phases");
  out.require(s.end_reason() == bdi::EndReason::kCompleted && s.transcript.back().role == Role::kChild,
              "graceful end");

  // Abusive trainee, starting after some rapport was built.
  auto a = f.engine->create_session(Condition::kRuleBased, playground_only(), 3, "abusive");
  for (const char* intent : {"greet", "explain_anonymity", "compliment_courage"}) {
    f.engine->post_message(a, utterance_for(intent));
  }
  const auto& rules = a.scenario->abort;
  int abusive_turns = 0;
  while (a.status == SessionStatus::kActive && abusive_turns < 20) {
    f.engine->post_message(a, utterance_for("give_orders"));
    ++abusive_turns;
  }
  out.detail << "abusive turns to leave=" << abusive_turns;
  out.require(a.end_reason() == bdi::EndReason::kLeft, "abusive script leaves");
  out.require(a.transcript.back().text == rules.leave_message, "leave message");
  out.require(abusive_turns <= rules.violation_limit + 1, "within violation limit");
}

void pacing(Outcome& out) {
  auto f = make_engine(true);
  int replies = 0, sessions = 0;
  std::int64_t lo = INT64_MAX, hi = 0;
  bool in_window = true;
  std::uint64_t seed = 0;
  const auto& script = golden_intents();
  while (replies < 100) {
    auto s = f.engine->create_session(Condition::kRuleBased, {}, seed++, "pace");
    ++sessions;
    for (std::size_t i = 0; s.status == SessionStatus::kActive && replies < 100; ++i) {
      const std::string text = i % 3 == 2 ? "hmm okay" : utterance_for(script[i % script.size()]);
      const auto r = f.engine->post_message(s, text);
      if (!r.child) break;
      const auto d = r.child->t_ms - s.transcript[s.transcript.size() - 2].t_ms;
      lo = std::min(lo, d);
      hi = std::max(hi, d);
      in_window &= d >= 15000 && d <= 25000;
      ++replies;
    }
  }
  out.detail << "paced replies=" << replies << " over " << sessions << " sessions, delay range=[" << lo / 1000.0
             << ", " << hi / 1000.0 << "] s ";
  out.require(in_window, "paced delays within [15, 25] s");

  auto g = make_engine(false);
  auto s = g.engine->create_session(Condition::kRuleBased, {}, 1, "fast");
  double worst_ms = 0.0;
  std::int64_t worst_virtual = 0;
  for (int turn = 0; turn < 100; ++turn) {
    if (s.status != SessionStatus::kActive) s = g.engine->create_session(Condition::kRuleBased, {}, turn, "fast");
    const auto t0 = WallClock::now();
    const auto r = g.engine->post_message(s, utterance_for(script[turn % 5]));
    worst_ms = std::max(worst_ms, seconds_since(t0) * 1000.0);
    if (r.child) worst_virtual = std::max(worst_virtual, r.child->t_ms - s.transcript[s.transcript.size() - 2].t_ms);
  }
  out.detail << "unpaced worst turn=" << worst_ms << " ms, added delay=" << worst_virtual << " ms";
  out.require(worst_ms <= 100.0 && worst_virtual == 0, "unpaced overhead");
}

}  // namespace

int main() {
  criterion("posterior reproduction", posterior_reproduction);
  criterion("engagement HDI", engagement_hdi);
  criterion("preference test", preference_test);
  criterion("agreement suite", agreement_suite);
  criterion("pipeline routing", pipeline_routing);
  criterion("retrieval oracle", retrieval_oracle);
  criterion("determinism and replay", determinism_replay);
  criterion("five-phase traversal", five_phase_traversal);
  criterion("pacing", pacing);
  std::cout << (failures == 0 ? "all acceptance criteria passed" : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}

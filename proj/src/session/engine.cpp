#include "vchild/session/engine.hpp"

#include <algorithm>
#include <cmath>

#include "vchild/error.hpp"
#include "vchild/nlu/classifier.hpp"
#include "vchild/rng.hpp"
#include "vchild/text.hpp"

namespace vchild::session {

namespace {

std::string replace_all(std::string s, std::string_view from, std::string_view to) {
  for (std::size_t pos = s.find(from); pos != std::string::npos; pos = s.find(from, pos + to.size())) {
    s.replace(pos, from.size(), to);
  }
  return s;
}

constexpr std::string_view kNamePlaceholder = "{child_name}";

}  // namespace

std::uint64_t turn_seed(std::uint64_t session_seed, int run, int turn) {
  return mix64(mix64(session_seed, static_cast<std::uint64_t>(run)), static_cast<std::uint64_t>(turn));
}

SessionEngine::SessionEngine(EngineResources resources, EngineConfig config)
    : res_(std::move(resources)), config_(std::move(config)) {
  config_.pacing.check();
  if (!(config_.budget_s > 0.0)) throw Error(Errc::InvalidInput, "budget must be positive");
  if (!res_.store || res_.store->empty()) throw Error(Errc::EmptyStore, "engine needs a non-empty vector store");
  if (!res_.embedder || !res_.prompts || !res_.clock) throw Error(Errc::InvalidInput, "engine resources incomplete");
  if (res_.embedder->dim() != res_.store->dim()) throw Error(Errc::InvalidInput, "embedder/store dimension mismatch");
  for (const auto& scenario : res_.catalogue) {
    auto ids = scenario->intent_ids();
    for (const auto& rec : res_.store->records()) {
      if (std::find(ids.begin(), ids.end(), rec.intent_id) == ids.end()) {
        throw Error(Errc::InvalidDataset, "dataset intent '" + rec.intent_id + "' is not defined by scenario '" +
                                              scenario->id + "'");
      }
    }
    if (!models_.emplace(scenario->id, std::make_unique<bdi::BdiModel>(scenario)).second) {
      throw Error(Errc::InvalidScenario, "duplicate scenario id '" + scenario->id + "'");
    }
  }
}

const bdi::BdiModel& SessionEngine::model(const std::string& scenario_id) const {
  auto it = models_.find(scenario_id);
  if (it == models_.end()) throw Error(Errc::NoScenarioAvailable, "no scenario '" + scenario_id + "'");
  return *it->second;
}

std::vector<std::string> SessionEngine::scenario_ids() const {
  std::vector<std::string> ids;
  for (const auto& [id, m] : models_) ids.push_back(id);
  return ids;
}

std::int64_t SessionEngine::session_ms(const Session& session) const {
  return (res_.clock->now() - session.started_at).count();
}

double SessionEngine::remaining_s(const Session& session) const {
  return std::max(0.0, session.budget_s - static_cast<double>(session_ms(session)) / 1000.0);
}

std::string SessionEngine::persona_for(const Session& session) const {
  return replace_all(session.scenario->persona, kNamePlaceholder, session.child_name);
}

void SessionEngine::start_run(Session& session) const {
  const auto& pool = session.scenario->child_name_pool;
  session.child_name = pool[pick_index(derive_seed(session.seed, SeedPurpose::kName, session.run), pool.size())];
  session.bdi = model(session.scenario->id).initial_state();
  session.transcript.clear();
  session.turn = 0;
  session.status = SessionStatus::kActive;

  ChatMessage opening;
  opening.role = Role::kChild;
  opening.text = replace_all(session.scenario->greeting, kNamePlaceholder, session.child_name);
  opening.t_ms = session_ms(session);
  Annotations a;
  a.source = nlg::ReplySource::kOpening;
  a.desire = session.bdi.active_desire;
  a.phase = bdi::ordinal(session.bdi.phase);
  opening.annotations = std::move(a);
  session.transcript.push_back(std::move(opening));
}

Session SessionEngine::create_session(Condition condition, const ScenarioSelector& selector, std::uint64_t seed,
                                      std::string id) const {
  if (condition == Condition::kLlmIntegrated && !res_.chat) {
    throw Error(Errc::InvalidInput, "llm_integrated condition needs an LLM client");
  }
  std::vector<std::shared_ptr<const bdi::Scenario>> eligible;
  for (const auto& s : res_.catalogue) {
    if (selector.exclude.count(s->id)) continue;
    if (selector.forced && *selector.forced != s->id) continue;
    eligible.push_back(s);
  }
  if (eligible.empty()) throw Error(Errc::NoScenarioAvailable, "no scenario left after exclusions");

  Session session;
  session.id = std::move(id);
  session.condition = condition;
  session.selector = selector;
  session.seed = seed;
  session.budget_s = config_.budget_s;
  session.started_at = res_.clock->now();
  session.scenario = eligible[pick_index(derive_seed(seed, SeedPurpose::kScenario, 0), eligible.size())];
  start_run(session);
  return session;
}

Session SessionEngine::resume_run(Condition condition, const std::string& scenario_id, std::uint64_t seed, int run,
                                  double budget_s, std::string id) const {
  ScenarioSelector selector;
  selector.forced = scenario_id;
  Session session = create_session(condition, selector, seed, std::move(id));
  session.run = run;
  session.budget_s = budget_s;
  start_run(session);
  return session;
}

void SessionEngine::end(Session& session, bdi::EndReason reason) const {
  session.bdi = model(session.scenario->id).end(session.bdi, reason);
  session.status = SessionStatus::kEnded;
}

void SessionEngine::restart_session(Session& session) const {
  const auto reason = session.end_reason();
  if (session.status != SessionStatus::kEnded ||
      (reason != bdi::EndReason::kLeft && reason != bdi::EndReason::kTraineeEnded &&
       reason != bdi::EndReason::kCompleted)) {
    throw Error(Errc::RestartNotAllowed, "restart needs a run that the child or trainee ended");
  }
  if (remaining_s(session) <= 0.0) {
    end(session, bdi::EndReason::kTimeUp);
    throw Error(Errc::BudgetExhausted, "session time is used up");
  }
  session.archived_runs.push_back(std::move(session.transcript));
  ++session.run;

  std::vector<std::shared_ptr<const bdi::Scenario>> eligible;
  for (const auto& s : res_.catalogue) {
    if (!session.selector.exclude.count(s->id)) eligible.push_back(s);
  }
  if (eligible.empty()) throw Error(Errc::NoScenarioAvailable, "no scenario left after exclusions");
  session.scenario =
      eligible[pick_index(derive_seed(session.seed, SeedPurpose::kScenario, session.run), eligible.size())];
  start_run(session);
}

PostResult SessionEngine::post_message(Session& session, std::string_view text) const {
  if (session.status == SessionStatus::kEnded) throw Error(Errc::SessionEnded, "session has ended");
  const Millis receipt = res_.clock->now();
  const Millis deadline = session.started_at + Millis(static_cast<std::int64_t>(std::llround(session.budget_s * 1000.0)));
  if (receipt >= deadline) {
    end(session, bdi::EndReason::kTimeUp);
    throw Error(Errc::BudgetExhausted, "time is up for this session");
  }
  if (text::trim(text).empty()) throw Error(Errc::EmptyInput, "empty message");

  ++session.turn;
  ChatMessage trainee;
  trainee.role = Role::kTrainee;
  trainee.text = std::string(text);
  trainee.t_ms = session_ms(session);
  session.transcript.push_back(std::move(trainee));

  PostResult result;
  auto finish = [&]() -> PostResult {
    result.status = session.status;
    result.end_reason = session.end_reason();
    result.remaining_s = remaining_s(session);
    return result;
  };

  if (is_farewell(text)) {
    end(session, bdi::EndReason::kTraineeEnded);
    return finish();
  }

  const std::uint64_t seed = turn_seed(session.seed, session.run, session.turn);
  Reply reply = session.condition == Condition::kRuleBased ? rule_turn(session, text, seed)
                                                           : llm_turn(session, text, seed);

  if (session.condition == Condition::kRuleBased && config_.pacing.enabled) {
    const double u = unit_double(derive_seed(seed, SeedPurpose::kPacing));
    const double delay_s = config_.pacing.min_delay_s + u * (config_.pacing.max_delay_s - config_.pacing.min_delay_s);
    const Millis release = receipt + Millis(static_cast<std::int64_t>(std::llround(delay_s * 1000.0)));
    if (release > deadline) {
      res_.clock->sleep_until(deadline);
      end(session, bdi::EndReason::kTimeUp);
      return finish();
    }
    res_.clock->sleep_until(release);
  }
  if (res_.clock->now() > deadline) {
    end(session, bdi::EndReason::kTimeUp);
    return finish();
  }

  ChatMessage child;
  child.role = Role::kChild;
  child.text = replace_all(std::move(reply.text), kNamePlaceholder, session.child_name);
  child.t_ms = session_ms(session);
  child.annotations = std::move(reply.annotations);
  session.transcript.push_back(child);
  result.child = std::move(child);

  if (session.bdi.terminated()) session.status = SessionStatus::kEnded;
  return finish();
}

SessionEngine::Reply SessionEngine::default_reply(const Session& session, std::uint64_t seed, std::string intent,
                                                  std::string detail) const {
  const auto& m = model(session.scenario->id);
  bdi::BdiState live = session.bdi;
  live.end_reason = bdi::EndReason::kNone;  // a completed run still answers this turn
  Reply r;
  r.text = m.default_response(live, seed);
  r.annotations.intent = std::move(intent);
  r.annotations.source = nlg::ReplySource::kDefaultDesire;
  r.annotations.desire = live.active_desire;
  r.annotations.phase = bdi::ordinal(live.phase);
  r.annotations.detail = std::move(detail);
  return r;
}

SessionEngine::Reply SessionEngine::unknown_turn(Session& session, std::uint64_t seed, const std::string& persona,
                                                 std::string_view text, bool use_llm) const {
  const auto& m = model(session.scenario->id);
  session.bdi = m.register_unknown(session.bdi);
  if (auto leave = m.check_abort(session.bdi)) {
    Reply r;
    r.text = *leave;
    r.annotations.intent = std::string(nlg::kUnknownIntent);
    r.annotations.source = nlg::ReplySource::kLeave;
    r.annotations.desire = session.bdi.active_desire;
    r.annotations.phase = bdi::ordinal(session.bdi.phase);
    return r;
  }
  if (!use_llm) return default_reply(session, seed, std::string(nlg::kUnknownIntent), "");

  const std::string goal = m.active_desire(session.bdi).label;
  nlg::PromptText prompt = res_.prompts->build_bypass_prompt(persona, goal, text);
  prompt.meta = {nlg::PromptKind::kBypass, session.id, session.turn};
  std::string failure;
  auto generated = call_llm(nlg::PromptKind::kBypass, prompt, &failure);
  if (!generated) return default_reply(session, seed, std::string(nlg::kUnknownIntent), failure);
  Reply r;
  r.text = std::move(*generated);
  r.annotations.intent = std::string(nlg::kUnknownIntent);
  r.annotations.source = nlg::ReplySource::kLlmBypass;
  r.annotations.desire = session.bdi.active_desire;
  r.annotations.phase = bdi::ordinal(session.bdi.phase);
  return r;
}

SessionEngine::Reply SessionEngine::rule_turn(Session& session, std::string_view text, std::uint64_t seed) const {
  const auto& m = model(session.scenario->id);
  const auto decision = nlu::classify_rule(*res_.store, *res_.embedder, text, session.scenario->nlu_tau);
  if (!decision.known()) return unknown_turn(session, seed, persona_for(session), text, false);

  auto turn = m.apply_intent(session.bdi, decision.outcome, seed);
  session.bdi = std::move(turn.state);
  Reply r;
  r.annotations.intent = decision.outcome;
  r.annotations.desire = turn.provenance.desire_id;
  r.annotations.phase = bdi::ordinal(session.bdi.phase);
  if (turn.leave_message) {
    r.text = *turn.leave_message;
    r.annotations.source = nlg::ReplySource::kLeave;
    return r;
  }
  r.text = std::move(turn.reply);
  r.annotations.source = nlg::ReplySource::kRuleBank;
  r.annotations.variant = turn.provenance.variant_index;
  return r;
}

std::optional<std::string> SessionEngine::call_llm(nlg::PromptKind kind, const nlg::PromptText& prompt,
                                                   std::string* failure) const {
  llm::ChatRequest req;
  req.model = config_.llm.model;
  req.timeout = config_.llm.timeout;
  req.messages = {{"system", prompt.system_part}, {"user", prompt.user_part}};
  switch (kind) {
    case nlg::PromptKind::kNlu:
      req.temperature = config_.llm.nlu_temperature;
      req.max_tokens = config_.llm.nlu_max_tokens;
      break;
    case nlg::PromptKind::kNlg:
      req.temperature = config_.llm.nlg_temperature;
      req.max_tokens = config_.llm.reply_max_tokens;
      break;
    case nlg::PromptKind::kBypass:
      req.temperature = config_.llm.bypass_temperature;
      req.max_tokens = config_.llm.reply_max_tokens;
      break;
  }
  const llm::ChatReply reply = res_.chat->complete(req);
  if (!reply.ok()) {
    *failure = "llm_" + std::string(llm::to_string(reply.finish)) + (reply.error.empty() ? "" : ": " + reply.error);
    return std::nullopt;
  }
  if (kind == nlg::PromptKind::kNlu) return reply.text;
  try {
    return nlg::postprocess(reply.text, config_.postprocess);
  } catch (const Error& e) {
    *failure = std::string(to_string(e.code()));
    return std::nullopt;
  }
}

SessionEngine::Reply SessionEngine::llm_turn(Session& session, std::string_view text, std::uint64_t seed) const {
  const auto& m = model(session.scenario->id);
  const std::string persona = persona_for(session);
  const auto known = session.scenario->intent_ids();

  std::string failure;
  std::optional<std::string> label;
  try {
    auto examples = nlu::retrieve_examples(*res_.store, *res_.embedder, text, config_.nlu_neighbours);
    nlg::PromptText prompt = res_.prompts->build_nlu_prompt(text, examples, known);
    prompt.meta = {nlg::PromptKind::kNlu, session.id, session.turn};
    label = call_llm(nlg::PromptKind::kNlu, prompt, &failure);
  } catch (const Error& e) {
    if (e.code() != Errc::ProviderUnavailable) throw;
    failure = e.what();
  }
  if (!label) return default_reply(session, seed, "", failure);

  const std::string intent = nlu::parse_intent_reply(*label, known);
  if (intent == nlg::kUnknownIntent) return unknown_turn(session, seed, persona, text, true);

  auto turn = m.apply_intent(session.bdi, intent, seed);
  session.bdi = std::move(turn.state);
  Reply r;
  r.annotations.intent = intent;
  r.annotations.desire = turn.provenance.desire_id;
  r.annotations.phase = bdi::ordinal(session.bdi.phase);
  if (turn.leave_message) {
    r.text = *turn.leave_message;
    r.annotations.source = nlg::ReplySource::kLeave;
    return r;
  }

  const std::string goal = model(session.scenario->id).scenario().find_desire(turn.provenance.desire_id)->label;
  std::vector<std::string> examples(turn.variants.begin(), turn.variants.end());
  for (auto& e : examples) e = replace_all(e, kNamePlaceholder, session.child_name);
  nlg::PromptText prompt = res_.prompts->build_nlg_prompt(persona, goal, examples, text);
  prompt.meta = {nlg::PromptKind::kNlg, session.id, session.turn};
  auto generated = call_llm(nlg::PromptKind::kNlg, prompt, &failure);
  if (!generated) return default_reply(session, seed, intent, failure);
  r.text = std::move(*generated);
  r.annotations.source = nlg::ReplySource::kLlmNlg;
  return r;
}

}  // namespace vchild::session

#include "vchild/session/manager.hpp"

#include <cstdio>
#include <random>

#include "vchild/error.hpp"

namespace vchild::session {

SessionManager::SessionManager(std::shared_ptr<const SessionEngine> engine, ManagerOptions options)
    : engine_(std::move(engine)), options_(std::move(options)) {
  if (options_.log_dir) {
    std::error_code ec;
    std::filesystem::create_directories(*options_.log_dir, ec);
    if (ec) throw Error(Errc::StorageUnavailable, "cannot create log dir: " + ec.message());
  }
}

std::shared_ptr<SessionManager::Slot> SessionManager::find(const std::string& id) const {
  std::shared_lock lock(registry_mu_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw Error(Errc::SessionNotFound, "no session '" + id + "'");
  return it->second;
}

std::size_t SessionManager::size() const {
  std::shared_lock lock(registry_mu_);
  return sessions_.size();
}

void SessionManager::open_log(Slot& slot) {
  slot.log.reset();
  slot.logged = 0;
  if (!options_.log_dir) return;
  const auto path = *options_.log_dir / log_file_name(slot.session.id, slot.session.run);
  std::filesystem::remove(path);
  slot.log = std::make_unique<LogWriter>(path);
  slot.log->append(header_line(header_for(slot.session, engine_->config().pacing)));
}

void SessionManager::flush_log(Slot& slot) {
  if (!slot.log) return;
  for (; slot.logged < slot.session.transcript.size(); ++slot.logged) {
    slot.log->append(message_line(slot.session.transcript[slot.logged], slot.logged));
  }
}

void SessionManager::store(Slot& slot, Session session) {
  std::lock_guard lock(slot.state_mu);
  slot.session = std::move(session);
}

Session SessionManager::create(Condition condition, const ScenarioSelector& selector,
                               std::optional<std::uint64_t> seed) {
  if (!seed) {
    std::random_device rd;
    seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  }
  char id[32];
  std::snprintf(id, sizeof id, "s%06llu", static_cast<unsigned long long>(next_id_++));

  auto slot = std::make_shared<Slot>();
  slot->session = engine_->create_session(condition, selector, *seed, id);
  open_log(*slot);
  flush_log(*slot);
  {
    std::unique_lock lock(registry_mu_);
    sessions_.emplace(slot->session.id, slot);
  }
  return slot->session;
}

PostResult SessionManager::post(const std::string& id, std::string_view text) {
  auto slot = find(id);
  std::unique_lock turn(slot->turn_mu, std::try_to_lock);
  if (!turn.owns_lock()) throw Error(Errc::TurnInFlight, "a reply is still being prepared");
  Session work = snapshot(id);
  try {
    PostResult result = engine_->post_message(work, text);
    store(*slot, work);
    flush_log(*slot);
    return result;
  } catch (const Error& e) {
    if (e.code() == Errc::BudgetExhausted) store(*slot, work);  // the engine closed the session
    throw;
  }
}

Session SessionManager::restart(const std::string& id) {
  auto slot = find(id);
  std::unique_lock turn(slot->turn_mu, std::try_to_lock);
  if (!turn.owns_lock()) throw Error(Errc::TurnInFlight, "a reply is still being prepared");
  Session work = snapshot(id);
  try {
    engine_->restart_session(work);
  } catch (const Error& e) {
    if (e.code() == Errc::BudgetExhausted) store(*slot, work);
    throw;
  }
  store(*slot, work);
  open_log(*slot);
  flush_log(*slot);
  return work;
}

Session SessionManager::snapshot(const std::string& id) const {
  auto slot = find(id);
  std::lock_guard lock(slot->state_mu);
  return slot->session;
}

}  // namespace vchild::session

#pragma once

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>

#include "vchild/session/engine.hpp"
#include "vchild/session/log.hpp"

namespace vchild::session {

struct ManagerOptions {
  std::optional<std::filesystem::path> log_dir;  // one append-only file per run
};

/// Thread-safe registry of live sessions. Turns on one session are
/// serialised: a post that arrives while another is still running is
/// rejected with TurnInFlight. Snapshots never wait for a running turn.
class SessionManager {
 public:
  SessionManager(std::shared_ptr<const SessionEngine> engine, ManagerOptions options = {});

  /// A seed is drawn from std::random_device when none is given.
  Session create(Condition condition, const ScenarioSelector& selector, std::optional<std::uint64_t> seed = {});

  /// Throws SessionNotFound, TurnInFlight, SessionEnded or BudgetExhausted.
  PostResult post(const std::string& id, std::string_view text);

  Session restart(const std::string& id);

  /// Copy of the session as of the last completed turn.
  Session snapshot(const std::string& id) const;

  double remaining_s(const Session& session) const { return engine_->remaining_s(session); }
  std::size_t size() const;
  const SessionEngine& engine() const noexcept { return *engine_; }

 private:
  struct Slot {
    std::mutex turn_mu;
    mutable std::mutex state_mu;
    Session session;
    std::unique_ptr<LogWriter> log;
    std::size_t logged = 0;  // transcript entries already written
  };

  std::shared_ptr<Slot> find(const std::string& id) const;
  void open_log(Slot& slot);
  void flush_log(Slot& slot);
  void store(Slot& slot, Session session);

  std::shared_ptr<const SessionEngine> engine_;
  ManagerOptions options_;
  mutable std::shared_mutex registry_mu_;
  std::map<std::string, std::shared_ptr<Slot>, std::less<>> sessions_;
  std::atomic<std::uint64_t> next_id_{1};
};

}  // namespace vchild::session

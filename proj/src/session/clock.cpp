#include "vchild/session/clock.hpp"

#include <thread>

namespace vchild::session {

Millis SteadyClock::now() {
  return std::chrono::duration_cast<Millis>(std::chrono::steady_clock::now().time_since_epoch());
}

void SteadyClock::sleep_until(Millis t) {
  const Millis current = now();
  if (t > current) std::this_thread::sleep_for(t - current);
}

Millis VirtualClock::now() {
  std::lock_guard lock(mu_);
  return now_;
}

void VirtualClock::sleep_until(Millis t) {
  std::lock_guard lock(mu_);
  if (t > now_) now_ = t;
}

void VirtualClock::advance(Millis d) {
  std::lock_guard lock(mu_);
  now_ += d;
}

}  // namespace vchild::session

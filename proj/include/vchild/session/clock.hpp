#pragma once

#include <chrono>
#include <cstdint>
#include <mutex>

namespace vchild::session {

using Millis = std::chrono::milliseconds;

/// Monotonic time source. Pacing sleeps go through the clock so tests can
/// run on virtual time.
class Clock {
 public:
  virtual ~Clock() = default;
  virtual Millis now() = 0;
  virtual void sleep_until(Millis t) = 0;
};

class SteadyClock final : public Clock {
 public:
  Millis now() override;
  void sleep_until(Millis t) override;
};

/// Manually driven clock; sleeping jumps straight to the wake-up time.
class VirtualClock final : public Clock {
 public:
  explicit VirtualClock(Millis start = Millis{0}) : now_(start) {}

  Millis now() override;
  void sleep_until(Millis t) override;
  void advance(Millis d);

 private:
  std::mutex mu_;
  Millis now_;
};

}  // namespace vchild::session

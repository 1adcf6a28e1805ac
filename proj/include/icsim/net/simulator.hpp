#pragma once

#include <cstdint>
#include <functional>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

#include "icsim/net/rng.hpp"
#include "icsim/net/trace.hpp"
#include "icsim/net/types.hpp"

namespace icsim::net {

using EventId = std::uint64_t;
using EventFn = std::function<void()>;

class SchedulingInPast : public std::logic_error {
 public:
  SchedulingInPast(Micros at, Micros now)
      : std::logic_error("cannot schedule at t=" + std::to_string(at) +
                         " before now=" + std::to_string(now)) {}
};

/// Pops in (time, sequence) order; the sequence is assigned at insertion.
class EventQueue {
 public:
  struct Entry {
    Micros time = 0;
    EventId seq = 0;
    EventFn fn;
  };

  EventId push(Micros at, EventFn fn);
  bool empty() const { return heap_.empty(); }
  std::size_t size() const { return heap_.size(); }
  Micros next_time() const { return heap_.top().time; }
  Entry pop();

 private:
  struct Later {
    bool operator()(const Entry& a, const Entry& b) const {
      return a.time != b.time ? a.time > b.time : a.seq > b.seq;
    }
  };
  std::priority_queue<Entry, std::vector<Entry>, Later> heap_;
  EventId next_seq_ = 0;
};

/// Single-threaded discrete-event loop: clock, queue, the run's RNG and trace.
class Simulator {
 public:
  explicit Simulator(std::uint64_t seed) : rng_(seed) {}

  Simulator(const Simulator&) = delete;
  Simulator& operator=(const Simulator&) = delete;

  Micros now() const { return now_; }

  /// Throws SchedulingInPast if at < now().
  EventId schedule(Micros at, EventFn fn);
  EventId schedule_in(Micros delay, EventFn fn) { return schedule(now_ + delay, std::move(fn)); }

  /// Processes every event with time <= t_end, then sets now() = t_end.
  /// Returns the number of events processed.
  std::size_t run_until(Micros t_end);

  std::size_t pending() const { return queue_.size(); }
  std::uint64_t processed() const { return processed_; }

  DeterministicRng& rng() { return rng_; }
  Trace& trace() { return trace_; }
  const Trace& trace() const { return trace_; }

  void emit(TraceKind kind, std::string node, Json detail) {
    trace_.emit(now_, kind, std::move(node), std::move(detail));
  }

  /// Test hook: called with (time, sequence) for every popped event.
  void set_pop_observer(std::function<void(Micros, EventId)> observer) {
    pop_observer_ = std::move(observer);
  }

 private:
  Micros now_ = 0;
  EventQueue queue_;
  DeterministicRng rng_;
  Trace trace_;
  std::uint64_t processed_ = 0;
  std::function<void(Micros, EventId)> pop_observer_;
};

}  // namespace icsim::net

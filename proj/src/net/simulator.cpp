#include "icsim/net/simulator.hpp"

namespace icsim::net {

EventId EventQueue::push(Micros at, EventFn fn) {
  const EventId seq = next_seq_++;
  heap_.push(Entry{at, seq, std::move(fn)});
  return seq;
}

EventQueue::Entry EventQueue::pop() {
  // priority_queue::top is const; the copy of the closure is the price of
  // keeping the standard container.
  Entry entry = heap_.top();
  heap_.pop();
  return entry;
}

EventId Simulator::schedule(Micros at, EventFn fn) {
  if (at < now_) throw SchedulingInPast(at, now_);
  return queue_.push(at, std::move(fn));
}

std::size_t Simulator::run_until(Micros t_end) {
  if (t_end < now_) throw SchedulingInPast(t_end, now_);
  std::size_t count = 0;
  while (!queue_.empty() && queue_.next_time() <= t_end) {
    EventQueue::Entry entry = queue_.pop();
    now_ = entry.time;
    if (pop_observer_) pop_observer_(entry.time, entry.seq);
    entry.fn();
    ++count;
  }
  now_ = t_end;
  processed_ += count;
  return count;
}

}  // namespace icsim::net

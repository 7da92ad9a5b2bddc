#include "shopfloor/engine.hpp"

#include <stdexcept>
#include <string>

namespace shopfloor {

void SimClock::advance_to(Minutes t) {
  if (t < now_) {
    throw std::logic_error("clock cannot move backwards: " + std::to_string(t) + " < " +
                           std::to_string(now_));
  }
  now_ = t;
}

void EventQueue::push(Minutes fire_time, const EventPayload& payload) {
  heap_.push(Event{fire_time, next_sequence_++, payload});
}

std::optional<Event> EventQueue::pop() {
  if (heap_.empty()) return std::nullopt;
  Event ev = heap_.top();
  heap_.pop();
  return ev;
}

const Event* EventQueue::peek() const { return heap_.empty() ? nullptr : &heap_.top(); }

void Scheduler::schedule(Minutes fire_time, const EventPayload& payload) {
  if (fire_time < clock_.now()) {
    throw std::logic_error("event scheduled in the past: " + std::to_string(fire_time) +
                           " < now " + std::to_string(clock_.now()));
  }
  queue_.push(fire_time, payload);
}

std::size_t Scheduler::run_until(Minutes t_end, const Handler& handle) {
  if (t_end < clock_.now()) {
    throw std::logic_error("run_until target lies before the current time");
  }
  std::size_t processed = 0;
  while (const Event* next = queue_.peek()) {
    if (next->fire_time > t_end) break;
    Event ev = *queue_.pop();
    clock_.advance_to(ev.fire_time);
    handle(ev);
    ++processed;
  }
  clock_.advance_to(t_end);
  return processed;
}

}  // namespace shopfloor

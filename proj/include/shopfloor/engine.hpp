#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <vector>

namespace shopfloor {

/// Simulated minutes since run start.
using Minutes = double;

class SimClock {
 public:
  Minutes now() const noexcept { return now_; }
  /// Throws std::logic_error when asked to move backwards.
  void advance_to(Minutes t);

 private:
  Minutes now_ = 0.0;
};

/// What happens and to whom. Interpretation of `kind` belongs to the model.
struct EventPayload {
  std::uint16_t kind = 0;
  std::uint32_t agent = 0;
  std::uint32_t other = 0;
  std::uint64_t tag = 0;
};

struct Event {
  Minutes fire_time = 0.0;
  std::uint64_t sequence = 0;
  EventPayload payload;
};

/// Pending events ordered by (fire_time, sequence). Equal timestamps pop in
/// insertion order.
class EventQueue {
 public:
  void push(Minutes fire_time, const EventPayload& payload);
  std::optional<Event> pop();
  const Event* peek() const;
  bool empty() const noexcept { return heap_.empty(); }
  std::size_t size() const noexcept { return heap_.size(); }

 private:
  struct Later {
    bool operator()(const Event& a, const Event& b) const noexcept {
      if (a.fire_time != b.fire_time) return a.fire_time > b.fire_time;
      return a.sequence > b.sequence;
    }
  };
  std::priority_queue<Event, std::vector<Event>, Later> heap_;
  std::uint64_t next_sequence_ = 0;
};

/// Clock plus queue. The model owns one of these per replication.
class Scheduler {
 public:
  using Handler = std::function<void(const Event&)>;

  const SimClock& clock() const noexcept { return clock_; }
  Minutes now() const noexcept { return clock_.now(); }

  /// Rejects events in the past with std::logic_error.
  void schedule(Minutes fire_time, const EventPayload& payload);

  /// Processes every event with fire_time <= t_end in (time, sequence)
  /// order, then leaves the clock at t_end. Returns the number of events
  /// processed.
  std::size_t run_until(Minutes t_end, const Handler& handle);

  std::size_t pending() const noexcept { return queue_.size(); }

 private:
  SimClock clock_;
  EventQueue queue_;
};

}  // namespace shopfloor

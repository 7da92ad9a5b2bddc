#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "shopfloor/engine.hpp"

namespace shopfloor {

/// Tab-separated event log: `time<TAB>event_kind<TAB>agent_id`.
///
/// Times use the shortest representation that round-trips to the same
/// double, so a replay sees exactly the simulated values. Agent ids are
/// `c<n>` for customers, `s<n>` for staff and `-` for department events.
class TraceSink {
 public:
  TraceSink() = default;
  explicit TraceSink(std::ostream* out) : out_(out) {}

  bool enabled() const noexcept { return out_ != nullptr; }

  void customer(Minutes t, std::string_view kind, std::uint32_t id) { write(t, kind, 'c', id); }
  void staff(Minutes t, std::string_view kind, std::uint32_t id) { write(t, kind, 's', id); }
  void department(Minutes t, std::string_view kind);

 private:
  void write(Minutes t, std::string_view kind, char prefix, std::uint32_t id);
  std::ostream* out_ = nullptr;
};

/// Shortest round-trip decimal form of `t`.
std::string format_time(Minutes t);

}  // namespace shopfloor

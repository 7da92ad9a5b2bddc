#pragma once

#include "shopfloor/config.hpp"
#include "shopfloor/engine.hpp"

namespace shopfloor {

inline constexpr Minutes kMinutesPerDay = 24.0 * 60.0;

/// Opening schedule: each day opens at midnight-relative minute 0 and stays
/// open for `open_hours_per_day`; the first `days_per_week` days of every
/// week trade.
class Calendar {
 public:
  explicit Calendar(const RunControl& run);

  int total_days() const noexcept { return total_days_; }
  bool is_open_day(int day) const noexcept;
  Minutes day_start(int day) const noexcept { return day * kMinutesPerDay; }
  Minutes day_close(int day) const noexcept { return day_start(day) + open_length_; }
  Minutes end() const noexcept { return total_days_ * kMinutesPerDay; }
  Minutes open_length() const noexcept { return open_length_; }

  /// Total opening minutes in the run.
  Minutes open_minutes() const noexcept;

  /// Minutes of [from, to) that fall inside opening hours.
  Minutes open_overlap(Minutes from, Minutes to) const noexcept;

 private:
  int total_days_;
  int days_per_week_;
  Minutes open_length_;
};

}  // namespace shopfloor

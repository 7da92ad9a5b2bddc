#include "shopfloor/calendar.hpp"

#include <algorithm>
#include <cmath>

namespace shopfloor {

Calendar::Calendar(const RunControl& run)
    : total_days_(run.weeks * 7),
      days_per_week_(run.days_per_week),
      open_length_(run.open_hours_per_day * 60.0) {}

bool Calendar::is_open_day(int day) const noexcept {
  return day >= 0 && day < total_days_ && (day % 7) < days_per_week_;
}

Minutes Calendar::open_minutes() const noexcept {
  int open_days = 0;
  for (int d = 0; d < total_days_; ++d) open_days += is_open_day(d) ? 1 : 0;
  return open_days * open_length_;
}

Minutes Calendar::open_overlap(Minutes from, Minutes to) const noexcept {
  if (!(to > from)) return 0.0;
  const int first = std::max(0, static_cast<int>(std::floor(from / kMinutesPerDay)));
  const int last = std::min(total_days_ - 1, static_cast<int>(std::floor(to / kMinutesPerDay)));
  Minutes total = 0.0;
  for (int d = first; d <= last; ++d) {
    if (!is_open_day(d)) continue;
    const Minutes lo = std::max(from, day_start(d));
    const Minutes hi = std::min(to, day_close(d));
    if (hi > lo) total += hi - lo;
  }
  return total;
}

}  // namespace shopfloor

#include "shopfloor/trace.hpp"

#include <charconv>

namespace shopfloor {

std::string format_time(Minutes t) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, t);
  return std::string(buf, end);
}

void TraceSink::department(Minutes t, std::string_view kind) {
  if (!out_) return;
  *out_ << format_time(t) << '\t' << kind << "\t-\n";
}

void TraceSink::write(Minutes t, std::string_view kind, char prefix, std::uint32_t id) {
  if (!out_) return;
  *out_ << format_time(t) << '\t' << kind << '\t' << prefix << id << '\n';
}

}  // namespace shopfloor

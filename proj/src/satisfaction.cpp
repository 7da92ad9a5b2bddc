#include "shopfloor/satisfaction.hpp"

#include <stdexcept>

namespace shopfloor {

namespace {

constexpr std::array<std::string_view, kTransitionCount> kNames = {
    "help.seek",           "help.immediate_service",
    "help.wait",           "help.served_after_wait",
    "help.abandon",        "help.completion",
    "pay.immediate_service", "pay.wait",
    "pay.served_after_wait", "pay.abandon",
    "pay.completion",      "refund.immediate_service",
    "refund.wait",         "refund.served_after_wait",
    "refund.abandon",      "refund.completion",
    "refund.denied",       "leave_without_purchase",
};

std::int64_t checked_pow(std::int64_t base, int exponent) {
  std::int64_t result = 1;
  for (int i = 0; i < exponent; ++i) {
    if (base != 0 && result > INT64_MAX / base) {
      throw std::overflow_error("weight magnitude overflows 64 bits");
    }
    result *= base;
  }
  return result;
}

}  // namespace

std::string_view transition_name(Transition t) { return kNames.at(static_cast<std::size_t>(t)); }

Transition transition_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == name) return static_cast<Transition>(i);
  }
  throw std::invalid_argument("unknown transition kind '" + std::string(name) + "'");
}

Transition checked_transition(std::uint8_t raw) {
  if (raw >= kTransitionCount) {
    throw std::invalid_argument("unknown transition kind " + std::to_string(raw));
  }
  return static_cast<Transition>(raw);
}

std::size_t WeightTable::index(Transition t) {
  auto i = static_cast<std::size_t>(t);
  if (i >= kTransitionCount) {
    throw std::invalid_argument("unknown transition kind " + std::to_string(i));
  }
  return i;
}

WeightTable WeightTable::canonical() {
  WeightTable w;
  w.set(Transition::HelpSeek, 2);
  w.set(Transition::HelpImmediate, 2);
  w.set(Transition::HelpWait, -2);
  w.set(Transition::HelpServedAfterWait, 0);
  w.set(Transition::HelpAbandon, -4);
  w.set(Transition::HelpCompletion, 0);
  w.set(Transition::PayImmediate, 1);
  w.set(Transition::PayWait, -1);
  w.set(Transition::PayServedAfterWait, 1);
  w.set(Transition::PayAbandon, -4);
  w.set(Transition::PayCompletion, 4);
  w.set(Transition::RefundImmediate, 1);
  w.set(Transition::RefundWait, -1);
  w.set(Transition::RefundServedAfterWait, 1);
  w.set(Transition::RefundAbandon, -4);
  w.set(Transition::RefundCompletion, 2);
  w.set(Transition::RefundDenied, -2);
  w.set(Transition::LeaveWithoutPurchase, -2);
  return w;
}

WeightTable apply_scenario(const WeightTable& weights, const WeightScenario& scenario) {
  WeightTable out = weights;
  for (std::size_t i = 0; i < kTransitionCount; ++i) {
    const auto t = static_cast<Transition>(i);
    const std::int64_t w = weights[t];
    const std::int64_t sign = (w > 0) - (w < 0);
    const std::int64_t magnitude = w < 0 ? -w : w;
    std::int64_t next = w;
    if (const auto* u = std::get_if<UniformWeights>(&scenario)) {
      if (u->value <= 0) throw std::invalid_argument("uniform weight value must be positive");
      next = sign * u->value;
    } else if (const auto* s = std::get_if<ScaledWeights>(&scenario)) {
      if (s->factor <= 0) throw std::invalid_argument("weight scale factor must be positive");
      next = w * s->factor;
    } else if (const auto* p = std::get_if<SquareProgression>(&scenario)) {
      if (p->level < 1 || p->level > 3) {
        throw std::invalid_argument("square progression level must be 1, 2 or 3");
      }
      next = sign * checked_pow(magnitude, 1 << (p->level - 1));
    }
    out.set(t, next);
  }
  return out;
}

std::string describe_scenario(const WeightScenario& scenario) {
  if (const auto* u = std::get_if<UniformWeights>(&scenario)) {
    return "uniform(" + std::to_string(u->value) + ")";
  }
  if (const auto* s = std::get_if<ScaledWeights>(&scenario)) {
    return "scale(" + std::to_string(s->factor) + ")";
  }
  if (const auto* p = std::get_if<SquareProgression>(&scenario)) {
    return "square(" + std::to_string(p->level) + ")";
  }
  return "none";
}

SatisfactionLedger::Entry& SatisfactionLedger::entry(std::uint32_t customer) {
  if (customer >= entries_.size() || !entries_[customer].open) {
    throw std::logic_error("customer " + std::to_string(customer) + " is not registered");
  }
  return entries_[customer];
}

const SatisfactionLedger::Entry& SatisfactionLedger::entry(std::uint32_t customer) const {
  if (customer >= entries_.size() || !entries_[customer].open) {
    throw std::logic_error("customer " + std::to_string(customer) + " is not registered");
  }
  return entries_[customer];
}

void SatisfactionLedger::open(std::uint32_t customer, Goal goal_at_arrival) {
  if (customer >= entries_.size()) entries_.resize(customer + 1);
  Entry& e = entries_[customer];
  if (e.open) throw std::logic_error("customer " + std::to_string(customer) + " opened twice");
  e = Entry{0, goal_at_arrival, true, false};
}

void SatisfactionLedger::record_transition(std::uint32_t customer, Transition t) {
  Entry& e = entry(customer);
  if (e.done) {
    throw std::logic_error("customer " + std::to_string(customer) + " has already departed");
  }
  e.index += weights_[t];
}

void SatisfactionLedger::finalize_customer(std::uint32_t customer) {
  Entry& e = entry(customer);
  if (e.done) {
    throw std::logic_error("customer " + std::to_string(customer) + " finalized twice");
  }
  e.done = true;
  if (e.index > 0) ++satisfied_count_;
  overall_ += e.index;
  (e.goal == Goal::Refund ? overall_refund_ : overall_shopping_) += e.index;
}

std::int64_t SatisfactionLedger::index_of(std::uint32_t customer) const {
  return entry(customer).index;
}

bool SatisfactionLedger::finalized(std::uint32_t customer) const { return entry(customer).done; }

}  // namespace shopfloor

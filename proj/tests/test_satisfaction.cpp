#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <set>
#include <stdexcept>

#include "shopfloor/satisfaction.hpp"

using namespace shopfloor;
using T = Transition;

namespace {

std::int64_t path_total(std::initializer_list<Transition> path, const WeightTable& w) {
  SatisfactionLedger ledger(w);
  ledger.open(0, Goal::Purchase);
  for (auto t : path) ledger.record_transition(0, t);
  return ledger.index_of(0);
}

}  // namespace

TEST_CASE("canonical table magnitudes are 1, 2 or 4") {
  const auto w = WeightTable::canonical();
  for (std::size_t i = 0; i < kTransitionCount; ++i) {
    const auto m = std::llabs(w[static_cast<Transition>(i)]);
    CHECK((m == 0 || m == 1 || m == 2 || m == 4));
  }
}

TEST_CASE("help path arithmetic") {
  const auto w = WeightTable::canonical();
  CHECK(path_total({T::HelpSeek, T::HelpImmediate, T::HelpCompletion}, w) == 4);
  CHECK(path_total({T::HelpSeek, T::HelpWait, T::HelpServedAfterWait, T::HelpCompletion}, w) == 0);
  CHECK(path_total({T::HelpSeek, T::HelpWait, T::HelpAbandon}, w) == -4);
  CHECK(path_total({T::HelpSeek, T::HelpWait, T::HelpAbandon, T::LeaveWithoutPurchase}, w) == -6);
}

TEST_CASE("transition names round-trip") {
  std::set<std::string_view> names;
  for (std::size_t i = 0; i < kTransitionCount; ++i) {
    const auto t = static_cast<Transition>(i);
    const auto name = transition_name(t);
    CHECK(names.insert(name).second);
    CHECK(transition_from_name(name) == t);
  }
  CHECK(transition_name(T::HelpSeek) == "help.seek");
  CHECK(transition_name(T::LeaveWithoutPurchase) == "leave_without_purchase");
  CHECK_THROWS_AS(transition_from_name("help.teleport"), std::invalid_argument);
  CHECK_THROWS_AS(checked_transition(200), std::invalid_argument);
  CHECK(checked_transition(0) == T::HelpSeek);
}

TEST_CASE("ledger accounting") {
  SatisfactionLedger ledger(WeightTable::canonical());
  ledger.open(0, Goal::Purchase);
  ledger.open(1, Goal::Refund);
  ledger.open(2, Goal::Purchase);
  ledger.record_transition(0, T::PayImmediate);
  ledger.record_transition(0, T::PayCompletion);  // +5
  ledger.record_transition(1, T::RefundWait);
  ledger.record_transition(1, T::RefundDenied);  // -3
  ledger.record_transition(2, T::LeaveWithoutPurchase);  // -2
  ledger.finalize_customer(0);
  ledger.finalize_customer(1);
  ledger.finalize_customer(2);
  CHECK(ledger.satisfied_count() == 1);
  CHECK(ledger.overall() == 0);
  CHECK(ledger.overall_shopping() == 3);
  CHECK(ledger.overall_refund() == -3);
  CHECK(ledger.overall_shopping() + ledger.overall_refund() == ledger.overall());
  CHECK(ledger.finalized(1));

  CHECK_THROWS_AS(ledger.record_transition(0, T::PayWait), std::logic_error);
  CHECK_THROWS_AS(ledger.finalize_customer(0), std::logic_error);
}

TEST_CASE("zero index is not satisfied") {
  SatisfactionLedger ledger(WeightTable::canonical());
  ledger.open(0, Goal::Purchase);
  ledger.record_transition(0, T::HelpSeek);
  ledger.record_transition(0, T::HelpWait);
  ledger.finalize_customer(0);
  CHECK(ledger.overall() == 0);
  CHECK(ledger.satisfied_count() == 0);
}

TEST_CASE("scenario transforms") {
  const auto base = WeightTable::canonical();
  SUBCASE("uniform keeps signs") {
    const auto w = apply_scenario(base, UniformWeights{3});
    CHECK(w[T::HelpSeek] == 3);
    CHECK(w[T::HelpAbandon] == -3);
    CHECK(w[T::PayWait] == -3);
    CHECK(w[T::HelpServedAfterWait] == 0);
  }
  SUBCASE("scale multiplies") {
    for (std::int64_t k : {1, 10, 100}) {
      const auto w = apply_scenario(base, ScaledWeights{k});
      for (std::size_t i = 0; i < kTransitionCount; ++i) {
        const auto t = static_cast<Transition>(i);
        CHECK(w[t] == k * base[t]);
      }
    }
  }
  SUBCASE("square progression 1-2-4, 1-4-16, 1-16-256") {
    CHECK(apply_scenario(base, SquareProgression{1}) == base);
    const auto l2 = apply_scenario(base, SquareProgression{2});
    CHECK(l2[T::PayImmediate] == 1);
    CHECK(l2[T::HelpSeek] == 4);
    CHECK(l2[T::HelpAbandon] == -16);
    const auto l3 = apply_scenario(base, SquareProgression{3});
    CHECK(l3[T::PayWait] == -1);
    CHECK(l3[T::RefundCompletion] == 16);
    CHECK(l3[T::PayCompletion] == 256);
  }
  SUBCASE("no scenario is the identity") {
    CHECK(apply_scenario(base, std::monostate{}) == base);
  }
  SUBCASE("invalid parameters") {
    CHECK_THROWS_AS(apply_scenario(base, UniformWeights{0}), std::invalid_argument);
    CHECK_THROWS_AS(apply_scenario(base, ScaledWeights{-1}), std::invalid_argument);
    CHECK_THROWS_AS(apply_scenario(base, SquareProgression{4}), std::invalid_argument);
  }
  CHECK_FALSE(describe_scenario(ScaledWeights{10}).empty());
}

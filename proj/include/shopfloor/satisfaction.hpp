#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace shopfloor {

/// Customer transitions that carry a satisfaction weight.
enum class Transition : std::uint8_t {
  HelpSeek,
  HelpImmediate,
  HelpWait,
  HelpServedAfterWait,
  HelpAbandon,
  HelpCompletion,
  PayImmediate,
  PayWait,
  PayServedAfterWait,
  PayAbandon,
  PayCompletion,
  RefundImmediate,
  RefundWait,
  RefundServedAfterWait,
  RefundAbandon,
  RefundCompletion,
  RefundDenied,
  LeaveWithoutPurchase,
};

inline constexpr std::size_t kTransitionCount = 18;

/// Stable identifier used in traces and config files, e.g. "help.seek".
std::string_view transition_name(Transition t);

/// Inverse of transition_name; throws std::invalid_argument for unknown names.
Transition transition_from_name(std::string_view name);

/// Throws std::invalid_argument when `raw` is not a Transition value.
Transition checked_transition(std::uint8_t raw);

/// Signed integer weight per transition. Weights only observe behaviour;
/// the simulation never reads them when making decisions.
class WeightTable {
 public:
  WeightTable() { weights_.fill(0); }

  /// Help: seek +2, immediate +2, wait -2, served after wait 0, abandon -4.
  /// Pay: immediate +1, wait -1, served after wait +1, abandon -4,
  /// completion +4. Refund: immediate +1, wait -1, served after wait +1,
  /// abandon -4, granted +2, denied -2. Leaving without a purchase -2.
  static WeightTable canonical();

  std::int64_t operator[](Transition t) const { return weights_[index(t)]; }
  void set(Transition t, std::int64_t w) { weights_[index(t)] = w; }

  bool operator==(const WeightTable&) const = default;

 private:
  static std::size_t index(Transition t);
  std::array<std::int64_t, kTransitionCount> weights_;
};

struct UniformWeights {
  std::int64_t value;
  bool operator==(const UniformWeights&) const = default;
};
struct ScaledWeights {
  std::int64_t factor;
  bool operator==(const ScaledWeights&) const = default;
};
struct SquareProgression {
  int level;
  bool operator==(const SquareProgression&) const = default;
};
using WeightScenario = std::variant<std::monostate, UniformWeights, ScaledWeights, SquareProgression>;

/// Uniform sets every non-zero magnitude to v keeping its sign; Scale
/// multiplies every entry; SquareProgression raises each magnitude m to
/// m^(2^(level-1)) so {1,2,4} becomes {1,4,16} at level 2 and {1,16,256}
/// at level 3.
WeightTable apply_scenario(const WeightTable& weights, const WeightScenario& scenario);

std::string describe_scenario(const WeightScenario& scenario);

enum class Goal : std::uint8_t { Purchase, Refund };

/// Running per-customer indices plus the department totals.
class SatisfactionLedger {
 public:
  explicit SatisfactionLedger(WeightTable weights) : weights_(weights) {}

  /// Registers a customer; `goal_at_arrival` decides which partition the
  /// final index is added to.
  void open(std::uint32_t customer, Goal goal_at_arrival);

  /// Adds weights[t] to the customer's index. Rejects departed customers.
  void record_transition(std::uint32_t customer, Transition t);

  /// Freezes the index and updates the department counters. Rejects double
  /// finalisation.
  void finalize_customer(std::uint32_t customer);

  std::int64_t index_of(std::uint32_t customer) const;
  bool finalized(std::uint32_t customer) const;

  std::int64_t satisfied_count() const noexcept { return satisfied_count_; }
  std::int64_t overall() const noexcept { return overall_; }
  std::int64_t overall_shopping() const noexcept { return overall_shopping_; }
  std::int64_t overall_refund() const noexcept { return overall_refund_; }

  const WeightTable& weights() const noexcept { return weights_; }

 private:
  struct Entry {
    std::int64_t index = 0;
    Goal goal = Goal::Purchase;
    bool open = false;
    bool done = false;
  };
  Entry& entry(std::uint32_t customer);
  const Entry& entry(std::uint32_t customer) const;

  WeightTable weights_;
  std::vector<Entry> entries_;
  std::int64_t satisfied_count_ = 0;
  std::int64_t overall_ = 0;
  std::int64_t overall_shopping_ = 0;
  std::int64_t overall_refund_ = 0;
};

}  // namespace shopfloor

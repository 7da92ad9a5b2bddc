#pragma once

#include <array>
#include <cstdint>
#include <deque>
#include <optional>
#include <string_view>
#include <vector>

#include "shopfloor/calendar.hpp"
#include "shopfloor/config.hpp"
#include "shopfloor/engine.hpp"
#include "shopfloor/rng.hpp"
#include "shopfloor/satisfaction.hpp"
#include "shopfloor/trace.hpp"

namespace shopfloor {

enum class CustomerState : std::uint8_t {
  Contemplating,
  Browsing,
  SeekingHelp,
  WaitingHelpNormal,
  WaitingHelpExpert,
  ReceivingHelp,
  QueuingToPay,
  Paying,
  QueuingRefund,
  ProcessingRefund,
  AwaitingAuthorization,
  Left,
};

enum class Outcome : std::uint8_t { InStore, Purchased, NoPurchase, AfterRefund };

enum class StaffRole : std::uint8_t { Cashier, Normal, Expert };

std::string_view role_name(StaffRole role);

/// Service blocks a customer can enter. Authorization is the expert
/// sign-off inside the refund block.
enum class Block : std::uint8_t { Help, Pay, Refund, Authorization };

enum class QueueId : std::uint8_t { HelpNormal, HelpExpert, Pay, Refund, Authorization, None };

inline constexpr std::size_t kQueueCount = 5;

std::string_view queue_name(QueueId q);

inline constexpr std::uint32_t kNobody = UINT32_MAX;

struct Customer {
  std::uint32_t id = 0;
  Goal goal = Goal::Purchase;
  Goal goal_at_arrival = Goal::Purchase;
  CustomerState state = CustomerState::Contemplating;
  Outcome outcome = Outcome::InStore;
  bool has_item = false;
  bool escalated = false;
  std::optional<Minutes> patience_deadline;
  Minutes entered_at = 0.0;
  Minutes queued_at = 0.0;
  QueueId queue = QueueId::None;
  /// Bumped on every enqueue and dequeue; patience events carry the value
  /// current at enqueue time and are ignored when it no longer matches.
  std::uint64_t queue_generation = 0;
  std::uint32_t server = kNobody;   // staff currently serving
  std::uint32_t cashier = kNobody;  // cashier held during authorization
  std::uint32_t learner = kNobody;  // normal shadowing the expert
};

struct StaffMember {
  std::uint32_t id = 0;
  StaffRole role = StaffRole::Normal;
  StaffRole initial_role = StaffRole::Normal;
  int knowledge = 0;
  bool busy = false;
  Minutes busy_since = 0.0;
  Minutes busy_minutes = 0.0;
  std::uint32_t customer = kNobody;
  Minutes role_since = 0.0;
  /// Busy minutes inside opening hours, split by the role held at the time.
  double busy_open[3] = {0.0, 0.0, 0.0};
  /// Opening minutes spent in each role (closed off at promotion and run end).
  double member_open[3] = {0.0, 0.0, 0.0};
};

struct DepartmentCounters {
  std::int64_t arrivals = 0;
  std::int64_t refund_arrivals = 0;
  std::int64_t departures = 0;
  std::int64_t transactions = 0;
  std::int64_t refunds_granted = 0;
  std::int64_t refunds_denied = 0;
  std::int64_t escalations = 0;
  std::int64_t promotions = 0;
  std::int64_t abandonments[kQueueCount] = {0, 0, 0, 0, 0};
};

/// One replication of the shop floor: customers, staff, queues, and the
/// event loop that drives them.
class Department {
 public:
  struct Options {
    bool generate_arrivals = true;
    /// Re-check the structural invariants after every event.
    bool audit = false;
  };

  Department(const Config& config, RngStream rng, TraceSink trace = {});
  Department(const Config& config, RngStream rng, TraceSink trace, Options options);

  /// Processes events up to `t`; defaults to the end of the calendar.
  void run_until(Minutes t);
  void run() { run_until(calendar_.end()); }

  /// Admits a customer right now, outside the arrival process.
  std::uint32_t inject_customer(Goal goal);

  Minutes now() const noexcept { return scheduler_.now(); }
  const Config& config() const noexcept { return config_; }
  const Calendar& calendar() const noexcept { return calendar_; }
  const std::vector<Customer>& customers() const noexcept { return customers_; }
  const std::vector<StaffMember>& staff() const noexcept { return staff_; }
  const std::deque<std::uint32_t>& queue(QueueId q) const { return queues_.at(static_cast<std::size_t>(q)); }
  const SatisfactionLedger& ledger() const noexcept { return ledger_; }
  const DepartmentCounters& counters() const noexcept { return counters_; }
  std::int64_t in_store() const noexcept { return counters_.arrivals - counters_.departures; }
  bool open() const noexcept { return open_; }

  /// Throws std::logic_error describing the first broken invariant.
  void check_invariants() const;

  /// Role membership and busy time closed off at `now()`; used by metrics.
  struct RoleTotals {
    double busy_open[3] = {0.0, 0.0, 0.0};
    double member_open[3] = {0.0, 0.0, 0.0};
    int members_now[3] = {0, 0, 0};
    int members_ever[3] = {0, 0, 0};
  };
  RoleTotals role_totals() const;

 private:
  enum class EventKind : std::uint16_t { DayOpen, DayClose, Arrival, BrowseExit, Patience, ServiceEnd };

  void handle(const Event& ev);

  void on_day_open(int day);
  void on_arrival();
  void admit(Goal goal);
  void start_browsing(Customer& c);
  void on_browse_exit(Customer& c);

  void enter_help(Customer& c);
  void enter_pay(Customer& c);
  void enter_refund(Customer& c);
  void request_expert(Customer& c);
  void request_authorization(Customer& c);

  void enqueue(Customer& c, QueueId q, const Triangular* patience);
  void dequeue(Customer& c);
  void on_patience(Customer& c, std::uint64_t generation);

  void start_service(StaffMember& s, Customer& c, Block block, bool after_wait);
  void on_service_end(Customer& c, StaffMember& s, Block block);
  void finish_help(Customer& c);
  void finish_refund(Customer& c, bool approved);

  void occupy(StaffMember& s, Customer& c);
  void release(StaffMember& s, bool dispatch_next = true);
  void dispatch(StaffMember& s);
  void learn(StaffMember& s);
  StaffMember* idle(StaffRole role);
  StaffMember* idle_promoted();

  void record(Customer& c, Transition t);
  void depart(Customer& c);
  double draw(const Triangular& t) { return sample_triangular(rng_, t.min, t.mode, t.max); }

  std::deque<std::uint32_t>& queue_of(QueueId q) { return queues_.at(static_cast<std::size_t>(q)); }

  Config config_;
  Calendar calendar_;
  RngStream rng_;
  TraceSink trace_;
  Options options_;
  Scheduler scheduler_;
  SatisfactionLedger ledger_;
  std::vector<Customer> customers_;
  std::vector<StaffMember> staff_;
  std::array<std::deque<std::uint32_t>, kQueueCount> queues_;
  DepartmentCounters counters_;
  bool open_ = false;
  Minutes close_at_ = 0.0;
  std::vector<int> knowledge_seen_;
  Minutes last_event_time_ = 0.0;
};

}  // namespace shopfloor

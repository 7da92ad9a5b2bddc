#include "shopfloor/domain.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace shopfloor {

namespace {

constexpr std::size_t idx(StaffRole r) { return static_cast<std::size_t>(r); }
constexpr std::size_t idx(QueueId q) { return static_cast<std::size_t>(q); }

std::string_view serve_kind(Block b) {
  switch (b) {
    case Block::Help: return "serve_help";
    case Block::Pay: return "serve_pay";
    case Block::Refund: return "serve_refund";
    case Block::Authorization: return "serve_authorization";
  }
  return "serve";
}

std::string transition_kind(Transition t) { return "sat:" + std::string(transition_name(t)); }

}  // namespace

std::string_view role_name(StaffRole role) {
  switch (role) {
    case StaffRole::Cashier: return "cashier";
    case StaffRole::Normal: return "normal";
    case StaffRole::Expert: return "expert";
  }
  return "unknown";
}

std::string_view queue_name(QueueId q) {
  switch (q) {
    case QueueId::HelpNormal: return "help_normal";
    case QueueId::HelpExpert: return "help_expert";
    case QueueId::Pay: return "pay";
    case QueueId::Refund: return "refund";
    case QueueId::Authorization: return "authorization";
    case QueueId::None: return "none";
  }
  return "none";
}

Department::Department(const Config& config, RngStream rng, TraceSink trace)
    : Department(config, rng, trace, Options{}) {}

Department::Department(const Config& config, RngStream rng, TraceSink trace, Options options)
    : config_(config),
      calendar_(config.run),
      rng_(rng),
      trace_(trace),
      options_(options),
      ledger_(config.effective_weights()) {
  validate(config_);
  const auto add = [this](StaffRole role, int count) {
    for (int i = 0; i < count; ++i) {
      StaffMember s;
      s.id = static_cast<std::uint32_t>(staff_.size());
      s.role = role;
      s.initial_role = role;
      staff_.push_back(s);
      trace_.staff(0.0, "staff_" + std::string(role_name(role)), s.id);
    }
  };
  add(StaffRole::Cashier, config_.staffing.cashiers);
  add(StaffRole::Normal, config_.staffing.normals);
  add(StaffRole::Expert, config_.staffing.experts);
  knowledge_seen_.assign(staff_.size(), 0);

  for (int day = 0; day < calendar_.total_days(); ++day) {
    if (!calendar_.is_open_day(day)) continue;
    scheduler_.schedule(calendar_.day_start(day),
                        {static_cast<std::uint16_t>(EventKind::DayOpen), static_cast<std::uint32_t>(day)});
    scheduler_.schedule(calendar_.day_close(day),
                        {static_cast<std::uint16_t>(EventKind::DayClose), static_cast<std::uint32_t>(day)});
  }
}

void Department::run_until(Minutes t) {
  scheduler_.run_until(t, [this](const Event& ev) { handle(ev); });
}

std::uint32_t Department::inject_customer(Goal goal) {
  const auto id = static_cast<std::uint32_t>(customers_.size());
  admit(goal);
  return id;
}

void Department::handle(const Event& ev) {
  if (ev.fire_time < last_event_time_) {
    throw std::logic_error("event processed out of order");
  }
  last_event_time_ = ev.fire_time;
  const auto& p = ev.payload;
  switch (static_cast<EventKind>(p.kind)) {
    case EventKind::DayOpen:
      on_day_open(static_cast<int>(p.agent));
      break;
    case EventKind::DayClose:
      open_ = false;
      trace_.department(now(), "close");
      break;
    case EventKind::Arrival:
      on_arrival();
      break;
    case EventKind::BrowseExit:
      on_browse_exit(customers_.at(p.agent));
      break;
    case EventKind::Patience:
      on_patience(customers_.at(p.agent), p.tag);
      break;
    case EventKind::ServiceEnd:
      on_service_end(customers_.at(p.agent), staff_.at(p.other), static_cast<Block>(p.tag));
      break;
  }
  if (options_.audit) {
    check_invariants();
    for (const auto& s : staff_) {
      if (s.knowledge < knowledge_seen_[s.id]) throw std::logic_error("knowledge decreased");
      knowledge_seen_[s.id] = s.knowledge;
    }
  }
}

void Department::on_day_open(int day) {
  open_ = true;
  close_at_ = calendar_.day_close(day);
  trace_.department(now(), "open");
  if (!options_.generate_arrivals) return;
  const Minutes first = now() + sample_exponential(rng_, config_.department.arrival_rate);
  if (first < close_at_) scheduler_.schedule(first, {static_cast<std::uint16_t>(EventKind::Arrival)});
}

void Department::on_arrival() {
  const bool refund = config_.practice.refund_loop_enabled &&
                      bernoulli(rng_, config_.department.p_refund_visit);
  admit(refund ? Goal::Refund : Goal::Purchase);
  const Minutes next = now() + sample_exponential(rng_, config_.department.arrival_rate);
  if (next < close_at_) scheduler_.schedule(next, {static_cast<std::uint16_t>(EventKind::Arrival)});
}

void Department::admit(Goal goal) {
  Customer c;
  c.id = static_cast<std::uint32_t>(customers_.size());
  c.goal = goal;
  c.goal_at_arrival = goal;
  c.entered_at = now();
  customers_.push_back(c);
  Customer& cust = customers_.back();
  ++counters_.arrivals;
  if (goal == Goal::Refund) ++counters_.refund_arrivals;
  ledger_.open(cust.id, goal);
  trace_.customer(now(), goal == Goal::Refund ? "arrive_refund" : "arrive_purchase", cust.id);
  if (goal == Goal::Refund) {
    enter_refund(cust);
  } else {
    start_browsing(cust);
  }
}

void Department::start_browsing(Customer& c) {
  c.state = CustomerState::Browsing;
  trace_.customer(now(), "browse", c.id);
  scheduler_.schedule(now() + draw(config_.department.browse),
                      {static_cast<std::uint16_t>(EventKind::BrowseExit), c.id});
}

void Department::on_browse_exit(Customer& c) {
  if (c.state != CustomerState::Browsing) throw std::logic_error("browse exit for a non-browser");
  const auto& d = config_.department;
  if (bernoulli(rng_, d.p_need_help)) {
    trace_.customer(now(), "exit_browse_help", c.id);
    enter_help(c);
  } else if (bernoulli(rng_, d.p_buy_after_browse)) {
    trace_.customer(now(), "exit_browse_pay", c.id);
    c.has_item = true;
    enter_pay(c);
  } else {
    trace_.customer(now(), "exit_browse_leave", c.id);
    depart(c);
  }
}

StaffMember* Department::idle(StaffRole role) {
  for (auto& s : staff_) {
    if (s.role == role && !s.busy) return &s;
  }
  return nullptr;
}

// Staff promoted out of the normal role keep taking first-line help;
// hired experts only see escalations and authorizations.
StaffMember* Department::idle_promoted() {
  for (auto& s : staff_) {
    if (s.role == StaffRole::Expert && s.initial_role == StaffRole::Normal && !s.busy) return &s;
  }
  return nullptr;
}

void Department::enter_help(Customer& c) {
  c.state = CustomerState::SeekingHelp;
  record(c, Transition::HelpSeek);
  StaffMember* s = idle(StaffRole::Normal);
  if (!s) s = idle_promoted();
  if (s) {
    record(c, Transition::HelpImmediate);
    start_service(*s, c, Block::Help, false);
  } else {
    enqueue(c, QueueId::HelpNormal, &config_.department.help_patience);
  }
}

void Department::enter_pay(Customer& c) {
  if (!c.has_item) throw std::logic_error("customer reached the till without an item");
  if (StaffMember* s = idle(StaffRole::Cashier)) {
    record(c, Transition::PayImmediate);
    start_service(*s, c, Block::Pay, false);
  } else {
    enqueue(c, QueueId::Pay, &config_.department.pay_patience);
  }
}

void Department::enter_refund(Customer& c) {
  if (StaffMember* s = idle(StaffRole::Cashier)) {
    record(c, Transition::RefundImmediate);
    start_service(*s, c, Block::Refund, false);
  } else {
    enqueue(c, QueueId::Refund, &config_.department.refund_patience);
  }
}

void Department::request_expert(Customer& c) {
  if (StaffMember* e = idle(StaffRole::Expert)) {
    start_service(*e, c, Block::Help, false);
  } else {
    enqueue(c, QueueId::HelpExpert, &config_.department.help_patience);
  }
}

void Department::request_authorization(Customer& c) {
  trace_.customer(now(), "authorization_needed", c.id);
  if (StaffMember* e = idle(StaffRole::Expert)) {
    start_service(*e, c, Block::Authorization, false);
  } else {
    enqueue(c, QueueId::Authorization, nullptr);
  }
}

void Department::enqueue(Customer& c, QueueId q, const Triangular* patience) {
  switch (q) {
    case QueueId::HelpNormal:
      c.state = CustomerState::WaitingHelpNormal;
      record(c, Transition::HelpWait);
      break;
    case QueueId::HelpExpert:
      c.state = CustomerState::WaitingHelpExpert;
      record(c, Transition::HelpWait);
      break;
    case QueueId::Pay:
      c.state = CustomerState::QueuingToPay;
      record(c, Transition::PayWait);
      break;
    case QueueId::Refund:
      c.state = CustomerState::QueuingRefund;
      record(c, Transition::RefundWait);
      break;
    case QueueId::Authorization:
      c.state = CustomerState::AwaitingAuthorization;
      break;
    case QueueId::None:
      throw std::logic_error("enqueue into no queue");
  }
  c.queue = q;
  c.queued_at = now();
  ++c.queue_generation;
  queue_of(q).push_back(c.id);
  if (trace_.enabled()) trace_.customer(now(), "enqueue_" + std::string(queue_name(q)), c.id);
  if (patience) {
    const Minutes deadline = now() + draw(*patience);
    c.patience_deadline = deadline;
    scheduler_.schedule(deadline, {static_cast<std::uint16_t>(EventKind::Patience), c.id, 0,
                                   c.queue_generation});
  }
}

void Department::dequeue(Customer& c) {
  auto& q = queue_of(c.queue);
  auto it = std::find(q.begin(), q.end(), c.id);
  if (it == q.end()) throw std::logic_error("customer missing from its queue");
  q.erase(it);
  if (trace_.enabled()) trace_.customer(now(), "dequeue_" + std::string(queue_name(c.queue)), c.id);
  c.queue = QueueId::None;
  c.patience_deadline.reset();
  ++c.queue_generation;
}

void Department::on_patience(Customer& c, std::uint64_t generation) {
  if (c.queue == QueueId::None || c.queue_generation != generation) return;
  const QueueId q = c.queue;
  dequeue(c);
  ++counters_.abandonments[idx(q)];
  if (trace_.enabled()) trace_.customer(now(), "abandon_" + std::string(queue_name(q)), c.id);
  switch (q) {
    case QueueId::HelpNormal:
    case QueueId::HelpExpert:
      record(c, Transition::HelpAbandon);
      if (c.learner != kNobody) {
        StaffMember& l = staff_.at(c.learner);
        c.learner = kNobody;
        release(l);
      }
      if (bernoulli(rng_, config_.department.p_buy_without_help)) {
        c.has_item = true;
        enter_pay(c);
      } else {
        depart(c);
      }
      break;
    case QueueId::Pay:
      record(c, Transition::PayAbandon);
      depart(c);
      break;
    case QueueId::Refund:
      record(c, Transition::RefundAbandon);
      depart(c);
      break;
    default:
      throw std::logic_error("patience expiry in a queue without patience");
  }
}

void Department::start_service(StaffMember& s, Customer& c, Block block, bool after_wait) {
  const auto& d = config_.department;
  double duration = 0.0;
  switch (block) {
    case Block::Help:
      if (s.role == StaffRole::Cashier) throw std::logic_error("cashier asked to give advice");
      if (c.escalated && s.role != StaffRole::Expert) {
        throw std::logic_error("expert-level help given by a normal staff member");
      }
      c.state = CustomerState::ReceivingHelp;
      if (after_wait) record(c, Transition::HelpServedAfterWait);
      duration = draw(d.help_duration);
      break;
    case Block::Pay:
      if (s.role != StaffRole::Cashier) throw std::logic_error("payment taken by non-cashier");
      c.state = CustomerState::Paying;
      if (after_wait) record(c, Transition::PayServedAfterWait);
      duration = draw(d.pay_duration);
      break;
    case Block::Refund:
      if (s.role != StaffRole::Cashier) throw std::logic_error("refund handled by non-cashier");
      c.state = CustomerState::ProcessingRefund;
      if (after_wait) record(c, Transition::RefundServedAfterWait);
      duration = draw(d.refund_duration);
      break;
    case Block::Authorization:
      if (s.role != StaffRole::Expert) throw std::logic_error("refund authorised by non-expert");
      c.state = CustomerState::AwaitingAuthorization;
      duration = draw(d.authorization_duration);
      break;
  }
  occupy(s, c);
  c.server = s.id;
  trace_.customer(now(), serve_kind(block), c.id);
  scheduler_.schedule(now() + duration, {static_cast<std::uint16_t>(EventKind::ServiceEnd), c.id,
                                         s.id, static_cast<std::uint64_t>(block)});
}

void Department::on_service_end(Customer& c, StaffMember& s, Block block) {
  const auto& d = config_.department;
  const auto& p = config_.practice;
  c.server = kNobody;
  switch (block) {
    case Block::Help: {
      if (s.role == StaffRole::Normal && !c.escalated && bernoulli(rng_, d.p_escalate)) {
        c.escalated = true;
        ++counters_.escalations;
        trace_.customer(now(), "escalate", c.id);
        if (bernoulli(rng_, p.p_learn)) {
          c.learner = s.id;
          trace_.staff(now(), "shadow", s.id);
        } else {
          release(s);
        }
        request_expert(c);
        return;
      }
      release(s);
      if (c.learner != kNobody) {
        StaffMember& l = staff_.at(c.learner);
        c.learner = kNobody;
        release(l, false);
        learn(l);
        dispatch(l);
      }
      finish_help(c);
      return;
    }
    case Block::Pay:
      record(c, Transition::PayCompletion);
      ++counters_.transactions;
      c.outcome = Outcome::Purchased;
      trace_.customer(now(), "purchase", c.id);
      depart(c);
      release(s);
      return;
    case Block::Refund:
      if (bernoulli(rng_, p.p_task_empowerment)) {
        const bool approved = bernoulli(rng_, p.cashier_approval);
        release(s);
        finish_refund(c, approved);
      } else {
        c.cashier = s.id;
        request_authorization(c);
      }
      return;
    case Block::Authorization: {
      const bool approved = bernoulli(rng_, p.expert_approval);
      StaffMember& cashier = staff_.at(c.cashier);
      c.cashier = kNobody;
      release(s);
      release(cashier);
      finish_refund(c, approved);
      return;
    }
  }
}

void Department::finish_help(Customer& c) {
  record(c, Transition::HelpCompletion);
  if (bernoulli(rng_, config_.department.p_buy_after_help)) {
    c.has_item = true;
    enter_pay(c);
  } else {
    depart(c);
  }
}

void Department::finish_refund(Customer& c, bool approved) {
  if (!approved) {
    record(c, Transition::RefundDenied);
    ++counters_.refunds_denied;
    trace_.customer(now(), "refund_denied", c.id);
    depart(c);
    return;
  }
  record(c, Transition::RefundCompletion);
  ++counters_.refunds_granted;
  trace_.customer(now(), "refund_granted", c.id);
  if (bernoulli(rng_, config_.department.p_shop_after_refund)) {
    c.goal = Goal::Purchase;
    trace_.customer(now(), "goal_purchase", c.id);
    start_browsing(c);
  } else {
    depart(c);
  }
}

void Department::occupy(StaffMember& s, Customer& c) {
  if (s.busy) throw std::logic_error("staff member " + std::to_string(s.id) + " double-booked");
  s.busy = true;
  s.busy_since = now();
  s.customer = c.id;
  trace_.staff(now(), "busy", s.id);
}

void Department::release(StaffMember& s, bool dispatch_next) {
  if (!s.busy) throw std::logic_error("releasing an idle staff member");
  s.busy = false;
  s.busy_minutes += now() - s.busy_since;
  s.busy_open[idx(s.role)] += calendar_.open_overlap(s.busy_since, now());
  s.customer = kNobody;
  trace_.staff(now(), "idle", s.id);
  if (dispatch_next) dispatch(s);
}

void Department::learn(StaffMember& s) {
  ++s.knowledge;
  trace_.staff(now(), "knowledge", s.id);
  const auto& p = config_.practice;
  if (s.role == StaffRole::Normal && p.promotion_enabled && s.knowledge >= p.promotion_points()) {
    s.member_open[idx(StaffRole::Normal)] += calendar_.open_overlap(s.role_since, now());
    s.role = StaffRole::Expert;
    s.role_since = now();
    ++counters_.promotions;
    trace_.staff(now(), "promote", s.id);
  }
}

void Department::dispatch(StaffMember& s) {
  if (s.busy) return;
  auto next_from = [this](QueueId q) -> Customer* {
    auto& queue = queue_of(q);
    return queue.empty() ? nullptr : &customers_.at(queue.front());
  };
  switch (s.role) {
    case StaffRole::Cashier: {
      Customer* pay = next_from(QueueId::Pay);
      Customer* refund = next_from(QueueId::Refund);
      Customer* pick = pay;
      if (refund && (!pay || refund->queued_at < pay->queued_at)) pick = refund;
      if (!pick) return;
      const Block block = pick == pay ? Block::Pay : Block::Refund;
      dequeue(*pick);
      start_service(s, *pick, block, true);
      return;
    }
    case StaffRole::Normal:
      if (Customer* c = next_from(QueueId::HelpNormal)) {
        dequeue(*c);
        start_service(s, *c, Block::Help, true);
      }
      return;
    case StaffRole::Expert:
      if (Customer* c = next_from(QueueId::Authorization)) {
        dequeue(*c);
        start_service(s, *c, Block::Authorization, false);
      } else if (Customer* c2 = next_from(QueueId::HelpExpert)) {
        dequeue(*c2);
        start_service(s, *c2, Block::Help, true);
      } else if (s.initial_role != StaffRole::Normal) {
        return;
      } else if (Customer* c3 = next_from(QueueId::HelpNormal)) {
        dequeue(*c3);
        start_service(s, *c3, Block::Help, true);
      }
      return;
  }
}

void Department::record(Customer& c, Transition t) {
  ledger_.record_transition(c.id, t);
  if (trace_.enabled()) trace_.customer(now(), transition_kind(t), c.id);
}

void Department::depart(Customer& c) {
  if (c.state == CustomerState::Left) throw std::logic_error("customer departed twice");
  if (c.goal == Goal::Purchase && c.outcome != Outcome::Purchased) {
    record(c, Transition::LeaveWithoutPurchase);
    c.outcome = Outcome::NoPurchase;
  } else if (c.goal == Goal::Refund) {
    c.outcome = Outcome::AfterRefund;
  }
  c.state = CustomerState::Left;
  ledger_.finalize_customer(c.id);
  ++counters_.departures;
  trace_.customer(now(), "depart", c.id);
}

Department::RoleTotals Department::role_totals() const {
  RoleTotals t;
  for (const auto& s : staff_) {
    for (std::size_t r = 0; r < 3; ++r) {
      t.busy_open[r] += s.busy_open[r];
      t.member_open[r] += s.member_open[r];
    }
    t.member_open[idx(s.role)] += calendar_.open_overlap(s.role_since, now());
    if (s.busy) t.busy_open[idx(s.role)] += calendar_.open_overlap(s.busy_since, now());
    ++t.members_now[idx(s.role)];
    ++t.members_ever[idx(s.initial_role)];
    if (s.role != s.initial_role) ++t.members_ever[idx(s.role)];
  }
  return t;
}

void Department::check_invariants() const {
  auto fail = [](const std::string& what) { throw std::logic_error("invariant violated: " + what); };

  std::int64_t in_store = 0;
  for (const auto& c : customers_) {
    if (c.state != CustomerState::Left) ++in_store;
  }
  if (counters_.arrivals != counters_.departures + in_store) fail("arrivals != departures + in store");

  // Single placement: every queued id sits in exactly one queue, matching
  // its own record, and is not simultaneously being served.
  std::vector<int> placements(customers_.size(), 0);
  for (std::size_t q = 0; q < kQueueCount; ++q) {
    for (std::uint32_t id : queues_[q]) {
      if (id >= customers_.size()) fail("queue holds unknown customer");
      ++placements[id];
      const Customer& c = customers_[id];
      if (idx(c.queue) != q) fail("customer " + std::to_string(id) + " queue mismatch");
      if (c.server != kNobody) fail("customer " + std::to_string(id) + " queued while served");
    }
  }
  for (const auto& s : staff_) {
    if (!s.busy) continue;
    if (s.customer >= customers_.size()) fail("busy staff without a customer");
    const Customer& c = customers_[s.customer];
    if (c.state == CustomerState::Left) fail("staff busy with a departed customer");
    const bool linked = c.server == s.id || c.cashier == s.id || c.learner == s.id;
    if (!linked) fail("staff " + std::to_string(s.id) + " busy with unrelated customer");
  }
  for (const auto& c : customers_) {
    if (placements[c.id] > 1) fail("customer " + std::to_string(c.id) + " in two queues");
    if (c.queue != QueueId::None && placements[c.id] != 1) fail("customer queue record dangling");
    const bool waiting = c.state == CustomerState::WaitingHelpNormal ||
                         c.state == CustomerState::WaitingHelpExpert ||
                         c.state == CustomerState::QueuingToPay ||
                         c.state == CustomerState::QueuingRefund;
    if (waiting != c.patience_deadline.has_value()) fail("patience deadline out of sync with state");
    if (waiting && c.queue == QueueId::None) fail("waiting customer in no queue");
    if (c.state == CustomerState::Left && (c.queue != QueueId::None || c.server != kNobody)) {
      fail("departed customer still placed");
    }
    if (c.server != kNobody) {
      const StaffMember& s = staff_.at(c.server);
      if (!s.busy || s.customer != c.id) fail("customer served by a staff member not engaged");
      switch (c.state) {
        case CustomerState::ReceivingHelp:
          if (s.role == StaffRole::Cashier) fail("cashier giving advice");
          if (c.escalated && s.role != StaffRole::Expert) fail("unpromoted normal serving expert help");
          break;
        case CustomerState::Paying:
        case CustomerState::ProcessingRefund:
          if (s.role != StaffRole::Cashier) fail("till work by non-cashier");
          break;
        case CustomerState::AwaitingAuthorization:
          if (s.role != StaffRole::Expert) fail("authorisation by non-expert");
          break;
        default:
          fail("customer with a server in a non-service state");
      }
    }
    if (c.state == CustomerState::QueuingToPay || c.state == CustomerState::Paying) {
      if (!c.has_item) fail("paying without an item");
    }
  }
  for (const auto& s : staff_) {
    if (s.busy_minutes > now() + 1e-9) fail("busy minutes exceed elapsed time");
  }
  const RoleTotals totals = role_totals();
  for (std::size_t r = 0; r < 3; ++r) {
    if (totals.busy_open[r] > totals.member_open[r] + 1e-6) fail("utilization above 1");
  }
}

}  // namespace shopfloor

#include "shopfloor/metrics.hpp"

#include <charconv>
#include <map>
#include <stdexcept>
#include <string>

#include "shopfloor/calendar.hpp"
#include "shopfloor/domain.hpp"

namespace shopfloor {

namespace {

template <auto Member>
MetricField integer_field(std::string_view name) {
  return MetricField{
      name, true,
      [](const RunMetrics& m) -> std::optional<double> { return static_cast<double>(m.*Member); },
      [](RunMetrics& m, std::optional<double> v) {
        m.*Member = v ? static_cast<std::int64_t>(*v) : 0;
      }};
}

template <auto Member>
MetricField optional_field(std::string_view name) {
  return MetricField{name, false,
                     [](const RunMetrics& m) -> std::optional<double> { return m.*Member; },
                     [](RunMetrics& m, std::optional<double> v) { m.*Member = v; }};
}

std::uint32_t parse_agent(std::string_view agent, char prefix) {
  if (agent.size() < 2 || agent[0] != prefix) {
    throw std::runtime_error("malformed agent id '" + std::string(agent) + "'");
  }
  std::uint32_t id = 0;
  auto [ptr, ec] = std::from_chars(agent.data() + 1, agent.data() + agent.size(), id);
  if (ec != std::errc{} || ptr != agent.data() + agent.size()) {
    throw std::runtime_error("malformed agent id '" + std::string(agent) + "'");
  }
  return id;
}

}  // namespace

const std::vector<MetricField>& metric_fields() {
  static const std::vector<MetricField> fields = {
      integer_field<&RunMetrics::transactions>("transactions"),
      integer_field<&RunMetrics::satisfied_count>("satisfied_count"),
      integer_field<&RunMetrics::overall_satisfaction>("overall_satisfaction"),
      integer_field<&RunMetrics::overall_satisfaction_shopping>("overall_satisfaction_shopping"),
      integer_field<&RunMetrics::overall_satisfaction_refund>("overall_satisfaction_refund"),
      optional_field<&RunMetrics::utilization_cashier>("utilization_cashier"),
      optional_field<&RunMetrics::utilization_normal>("utilization_normal"),
      optional_field<&RunMetrics::utilization_expert>("utilization_expert"),
      MetricField{"mean_normal_knowledge", false,
                  [](const RunMetrics& m) -> std::optional<double> { return m.mean_normal_knowledge; },
                  [](RunMetrics& m, std::optional<double> v) { m.mean_normal_knowledge = v.value_or(0.0); }},
      integer_field<&RunMetrics::abandon_help_normal>("abandon_help_normal"),
      integer_field<&RunMetrics::abandon_help_expert>("abandon_help_expert"),
      integer_field<&RunMetrics::abandon_pay>("abandon_pay"),
      integer_field<&RunMetrics::abandon_refund>("abandon_refund"),
      integer_field<&RunMetrics::arrivals>("arrivals"),
      integer_field<&RunMetrics::departures>("departures"),
      integer_field<&RunMetrics::refund_arrivals>("refund_arrivals"),
      integer_field<&RunMetrics::refunds_granted>("refunds_granted"),
      integer_field<&RunMetrics::refunds_denied>("refunds_denied"),
      integer_field<&RunMetrics::escalations>("escalations"),
      integer_field<&RunMetrics::promotions>("promotions"),
  };
  return fields;
}

const MetricField& metric_field(std::string_view name) {
  for (const auto& f : metric_fields()) {
    if (f.name == name) return f;
  }
  throw std::invalid_argument("unknown metric '" + std::string(name) + "'");
}

std::optional<double> utilization(std::span<const double> busy_minutes, Minutes open_minutes) {
  if (!(open_minutes > 0.0)) throw std::invalid_argument("open minutes must be positive");
  if (busy_minutes.empty()) return std::nullopt;
  double total = 0.0;
  for (double b : busy_minutes) total += b;
  return total / (static_cast<double>(busy_minutes.size()) * open_minutes);
}

std::optional<double> group_utilization(double busy_open_minutes, double member_open_minutes,
                                        int members_now, int members_ever) {
  if (members_ever == 0) return std::nullopt;
  if (members_now == 0 || !(member_open_minutes > 0.0)) return 0.0;
  return busy_open_minutes / member_open_minutes;
}

RunMetrics snapshot(const Department& dept) {
  RunMetrics m;
  const auto& ledger = dept.ledger();
  const auto& counters = dept.counters();
  m.transactions = counters.transactions;
  m.satisfied_count = ledger.satisfied_count();
  m.overall_satisfaction = ledger.overall();
  m.overall_satisfaction_shopping = ledger.overall_shopping();
  m.overall_satisfaction_refund = ledger.overall_refund();

  const auto totals = dept.role_totals();
  auto util = [&](StaffRole r) {
    const auto i = static_cast<std::size_t>(r);
    return group_utilization(totals.busy_open[i], totals.member_open[i], totals.members_now[i],
                             totals.members_ever[i]);
  };
  m.utilization_cashier = util(StaffRole::Cashier);
  m.utilization_normal = util(StaffRole::Normal);
  m.utilization_expert = util(StaffRole::Expert);

  std::int64_t knowledge = 0;
  int normals = 0;
  for (const auto& s : dept.staff()) {
    if (s.role != StaffRole::Normal) continue;
    knowledge += s.knowledge;
    ++normals;
  }
  m.mean_normal_knowledge = normals > 0 ? static_cast<double>(knowledge) / normals : 0.0;

  m.abandon_help_normal = counters.abandonments[static_cast<std::size_t>(QueueId::HelpNormal)];
  m.abandon_help_expert = counters.abandonments[static_cast<std::size_t>(QueueId::HelpExpert)];
  m.abandon_pay = counters.abandonments[static_cast<std::size_t>(QueueId::Pay)];
  m.abandon_refund = counters.abandonments[static_cast<std::size_t>(QueueId::Refund)];
  m.arrivals = counters.arrivals;
  m.departures = counters.departures;
  m.refund_arrivals = counters.refund_arrivals;
  m.refunds_granted = counters.refunds_granted;
  m.refunds_denied = counters.refunds_denied;
  m.escalations = counters.escalations;
  m.promotions = counters.promotions;
  return m;
}

RunMetrics replay_trace(std::istream& in, const Config& config) {
  const Calendar calendar(config.run);
  const WeightTable weights = config.effective_weights();

  struct Staff {
    int role = 0;
    int initial_role = 0;
    Minutes busy_since = 0.0;
    bool busy = false;
    Minutes role_since = 0.0;
    double busy_open[3] = {0, 0, 0};
    double member_open[3] = {0, 0, 0};
    int knowledge = 0;
  };
  struct Customer {
    bool refund_goal = false;
    std::int64_t index = 0;
  };
  std::map<std::uint32_t, Staff> staff;
  std::map<std::uint32_t, Customer> customers;
  RunMetrics m;

  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto tab1 = line.find('\t');
    const auto tab2 = line.find('\t', tab1 + 1);
    if (tab1 == std::string::npos || tab2 == std::string::npos) {
      throw std::runtime_error("malformed trace line: " + line);
    }
    Minutes t = 0.0;
    auto [ptr, ec] = std::from_chars(line.data(), line.data() + tab1, t);
    if (ec != std::errc{}) throw std::runtime_error("malformed trace time: " + line);
    const std::string_view kind(line.data() + tab1 + 1, tab2 - tab1 - 1);
    const std::string_view agent(line.data() + tab2 + 1, line.size() - tab2 - 1);

    if (kind.rfind("staff_", 0) == 0) {
      Staff s;
      s.role = kind == "staff_cashier" ? 0 : kind == "staff_normal" ? 1 : 2;
      s.initial_role = s.role;
      staff[parse_agent(agent, 's')] = s;
    } else if (kind == "busy") {
      Staff& s = staff.at(parse_agent(agent, 's'));
      s.busy = true;
      s.busy_since = t;
    } else if (kind == "idle") {
      Staff& s = staff.at(parse_agent(agent, 's'));
      s.busy = false;
      s.busy_open[s.role] += calendar.open_overlap(s.busy_since, t);
    } else if (kind == "knowledge") {
      ++staff.at(parse_agent(agent, 's')).knowledge;
    } else if (kind == "promote") {
      Staff& s = staff.at(parse_agent(agent, 's'));
      s.member_open[s.role] += calendar.open_overlap(s.role_since, t);
      s.role = 2;
      s.role_since = t;
      ++m.promotions;
    } else if (kind == "arrive_purchase" || kind == "arrive_refund") {
      customers[parse_agent(agent, 'c')].refund_goal = kind == "arrive_refund";
      ++m.arrivals;
      if (kind == "arrive_refund") ++m.refund_arrivals;
    } else if (kind.rfind("sat:", 0) == 0) {
      customers.at(parse_agent(agent, 'c')).index += weights[transition_from_name(kind.substr(4))];
    } else if (kind == "depart") {
      const Customer& c = customers.at(parse_agent(agent, 'c'));
      ++m.departures;
      if (c.index > 0) ++m.satisfied_count;
      m.overall_satisfaction += c.index;
      (c.refund_goal ? m.overall_satisfaction_refund : m.overall_satisfaction_shopping) += c.index;
    } else if (kind == "purchase") {
      ++m.transactions;
    } else if (kind == "abandon_help_normal") {
      ++m.abandon_help_normal;
    } else if (kind == "abandon_help_expert") {
      ++m.abandon_help_expert;
    } else if (kind == "abandon_pay") {
      ++m.abandon_pay;
    } else if (kind == "abandon_refund") {
      ++m.abandon_refund;
    } else if (kind == "refund_granted") {
      ++m.refunds_granted;
    } else if (kind == "refund_denied") {
      ++m.refunds_denied;
    } else if (kind == "escalate") {
      ++m.escalations;
    }
  }

  const Minutes end = calendar.end();
  double busy[3] = {0, 0, 0};
  double member[3] = {0, 0, 0};
  int now_count[3] = {0, 0, 0};
  int ever[3] = {0, 0, 0};
  std::int64_t knowledge = 0;
  int normals = 0;
  for (const auto& [id, s] : staff) {
    for (int r = 0; r < 3; ++r) {
      busy[r] += s.busy_open[r];
      member[r] += s.member_open[r];
    }
    member[s.role] += calendar.open_overlap(s.role_since, end);
    if (s.busy) busy[s.role] += calendar.open_overlap(s.busy_since, end);
    ++now_count[s.role];
    ++ever[s.initial_role];
    if (s.role != s.initial_role) ++ever[s.role];
    if (s.role == 1) {
      knowledge += s.knowledge;
      ++normals;
    }
  }
  m.utilization_cashier = group_utilization(busy[0], member[0], now_count[0], ever[0]);
  m.utilization_normal = group_utilization(busy[1], member[1], now_count[1], ever[1]);
  m.utilization_expert = group_utilization(busy[2], member[2], now_count[2], ever[2]);
  m.mean_normal_knowledge = normals > 0 ? static_cast<double>(knowledge) / normals : 0.0;
  return m;
}

}  // namespace shopfloor

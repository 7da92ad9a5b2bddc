#pragma once

#include <cstdint>
#include <functional>
#include <istream>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "shopfloor/config.hpp"
#include "shopfloor/engine.hpp"

namespace shopfloor {

class Department;

/// Key performance indicators of one completed run.
struct RunMetrics {
  std::int64_t transactions = 0;
  std::int64_t satisfied_count = 0;
  std::int64_t overall_satisfaction = 0;
  std::int64_t overall_satisfaction_shopping = 0;
  std::int64_t overall_satisfaction_refund = 0;
  /// Absent when the run never had staff in that role.
  std::optional<double> utilization_cashier;
  std::optional<double> utilization_normal;
  std::optional<double> utilization_expert;
  double mean_normal_knowledge = 0.0;
  std::int64_t abandon_help_normal = 0;
  std::int64_t abandon_help_expert = 0;
  std::int64_t abandon_pay = 0;
  std::int64_t abandon_refund = 0;
  std::int64_t arrivals = 0;
  std::int64_t departures = 0;
  std::int64_t refund_arrivals = 0;
  std::int64_t refunds_granted = 0;
  std::int64_t refunds_denied = 0;
  std::int64_t escalations = 0;
  std::int64_t promotions = 0;

  bool operator==(const RunMetrics&) const = default;
};

/// Column descriptor used by exports and analysis. `value` returns nullopt
/// for absent fields.
struct MetricField {
  std::string_view name;
  bool integral;
  std::function<std::optional<double>(const RunMetrics&)> value;
  std::function<void(RunMetrics&, std::optional<double>)> assign;
};

const std::vector<MetricField>& metric_fields();
const MetricField& metric_field(std::string_view name);

/// Sum of busy minutes over the group divided by group size times open
/// minutes. An empty group is reported as absent.
std::optional<double> utilization(std::span<const double> busy_minutes, Minutes open_minutes);

/// Time-weighted variant for groups whose membership changes through
/// promotion. A group emptied by promotion reports 0.
std::optional<double> group_utilization(double busy_open_minutes, double member_open_minutes,
                                        int members_now, int members_ever);

RunMetrics snapshot(const Department& department);

/// Rebuilds the metrics of a run from its event trace alone.
RunMetrics replay_trace(std::istream& trace, const Config& config);

}  // namespace shopfloor

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"

#include "shopfloor/satisfaction.hpp"

namespace shopfloor {

struct Triangular {
  double min = 0.0;
  double mode = 0.0;
  double max = 0.0;

  double mean() const noexcept { return (min + mode + max) / 3.0; }
  bool operator==(const Triangular&) const = default;
};

/// Behavioural parameters of one department type. Durations are minutes.
struct DepartmentProfile {
  std::string name;
  double arrival_rate = 70.0;  // customers per open hour
  double p_need_help = 0.38;
  double p_buy_after_browse = 0.37;
  double p_buy_after_help = 0.56;
  double p_buy_without_help = 0.20;
  double p_refund_visit = 0.05;
  double p_shop_after_refund = 0.30;
  double p_escalate = 0.031;
  Triangular browse{1, 7, 15};
  Triangular help_duration{3, 15, 30};
  Triangular pay_duration{1, 3, 6};
  Triangular refund_duration{2, 5, 10};
  Triangular authorization_duration{1, 3, 7};
  Triangular pay_patience{5, 12, 20};
  Triangular help_patience{3, 8, 15};
  Triangular refund_patience{5, 12, 20};

  bool operator==(const DepartmentProfile&) const = default;
};

struct StaffingPlan {
  int cashiers = 3;
  int normals = 7;
  int experts = 2;

  int total() const noexcept { return cashiers + normals + experts; }
  bool operator==(const StaffingPlan&) const = default;
};

struct PracticeConfig {
  double p_task_empowerment = 0.0;
  double cashier_approval = 0.80;
  double expert_approval = 0.70;
  double p_learn = 0.0;
  bool promotion_enabled = false;
  double threshold_fraction = 1.0;
  int k_max = 90;
  bool refund_loop_enabled = true;

  /// Knowledge points a normal needs before promotion.
  int promotion_points() const;
  bool operator==(const PracticeConfig&) const = default;
};

struct RunControl {
  int weeks = 10;
  double open_hours_per_day = 10.0;
  int days_per_week = 7;
  int replications = 20;
  std::uint64_t base_seed = 42;
  WeightScenario weight_scenario;

  /// Total opening minutes over the run.
  double open_minutes() const noexcept {
    return weeks * days_per_week * open_hours_per_day * 60.0;
  }
  bool operator==(const RunControl&) const = default;
};

enum class Source { Published, Default, User };

std::string_view source_name(Source s);

/// Everything one simulation run needs. Immutable once validated.
struct Config {
  DepartmentProfile department;
  StaffingPlan staffing;
  PracticeConfig practice;
  RunControl run;
  WeightTable weights = WeightTable::canonical();
  /// Dotted key -> where its value came from.
  std::map<std::string, Source> provenance;

  /// Weight table after the run's scenario transform.
  WeightTable effective_weights() const { return apply_scenario(weights, run.weight_scenario); }

  bool operator==(const Config&) const = default;
};

/// Validation or schema failure; `key()` is the dotted path at fault.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& what)
      : std::runtime_error(key.empty() ? "config: " + what : "config key '" + key + "': " + what),
        key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

DepartmentProfile atv_profile();
/// Placeholder values chosen only to honour the qualitative contrasts with
/// A&TV: more arrivals, higher conversion, shorter service, less help.
DepartmentProfile ww_profile();

/// Looks up "atv" or "ww" (case-insensitive, "A&TV" accepted).
DepartmentProfile builtin_profile(std::string_view name);

/// Complete default configuration for a builtin department, with provenance.
Config default_config(std::string_view department = "atv");

/// Throws ConfigError naming the first invalid key.
void validate(const Config& config);

Config config_from_json(const nlohmann::json& doc);
nlohmann::json config_to_json(const Config& config);

Config load_config(const std::filesystem::path& path);

/// Sets `dotted` (e.g. "department.p_need_help") in a config document.
/// `value` is parsed as JSON when possible and kept as a string otherwise.
void apply_override(nlohmann::json& doc, std::string_view dotted, std::string_view value);

/// FNV-1a over the canonical JSON dump; recorded with results.
std::uint64_t config_hash(const Config& config);

}  // namespace shopfloor

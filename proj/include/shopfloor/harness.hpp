#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <istream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "shopfloor/config.hpp"
#include "shopfloor/metrics.hpp"

namespace shopfloor {

inline constexpr std::string_view kEngineVersion = "shopfloor-1.0.0";

/// One cell of an experiment. Labels take the form "factor=value" with
/// multiple factors joined by ';', e.g. "dept=atv;cashiers=3".
struct Condition {
  std::string label;
  Config config;
};

struct ExperimentPlan {
  std::string name;
  std::vector<Condition> conditions;
  int replications = 20;
  std::uint64_t base_seed = 42;
  /// Variables `analyze` looks at by default.
  std::vector<std::string> dependent_variables;

  /// Throws std::invalid_argument on an empty plan, duplicate labels,
  /// replications < 1 or an invalid condition config.
  void check() const;
};

/// Single-factor plan that varies one parameter of `base`.
ExperimentPlan make_sweep(std::string name, const Config& base, std::string_view factor,
                          const std::vector<std::pair<std::string, Config>>& levels);

struct RunRecord {
  std::size_t condition = 0;
  int replication = 0;
  std::uint64_t seed = 0;
  RunMetrics metrics;
};

struct ReplicationSet {
  std::string plan_name;
  std::vector<std::string> condition_labels;
  int replications = 0;
  std::uint64_t base_seed = 0;
  std::vector<std::uint64_t> config_hashes;  // one per condition
  std::string engine_version{kEngineVersion};
  std::string generator;
  /// Condition-major: record (c, r) lives at c * replications + r.
  std::vector<RunRecord> records;

  /// Throws std::invalid_argument unless every (condition, replication)
  /// cell is present exactly once and in order.
  void check() const;
  const RunRecord& at(std::size_t condition, int replication) const;
  /// Values of one metric per condition; absent values are nullopt.
  std::vector<std::vector<std::optional<double>>> column(std::string_view metric) const;
};

/// A replication failed; carries the cell that failed.
class ReplicationError : public std::runtime_error {
 public:
  ReplicationError(std::size_t condition, int replication, const std::string& what);
  std::size_t condition() const noexcept { return condition_; }
  int replication() const noexcept { return replication_; }

 private:
  std::size_t condition_;
  int replication_;
};

struct RunOptions {
  /// Worker threads; 0 picks the hardware concurrency.
  unsigned jobs = 1;
  /// Called after each finished run with (done, total); serialized.
  std::function<void(std::size_t, std::size_t)> progress;
};

/// Seed of replication `replication` of condition `condition`.
std::uint64_t replication_seed(std::uint64_t base_seed, std::size_t condition, int replication);

/// Runs a single replication and returns its metrics; writes the event
/// trace to `trace` when non-null.
RunMetrics run_once(const Config& config, std::uint64_t seed, std::ostream* trace = nullptr);

ReplicationSet run_replications(const ExperimentPlan& plan, const RunOptions& options = {});

// Presets. Departments are "atv" or "ww".

ExperimentPlan preset_staffing(const std::vector<std::string>& departments);

/// scenario 1 = uniform value, 2 = scale, 3 = square progression. Levels
/// 1..3 are swept unless `level` pins one.
ExperimentPlan preset_weight_sensitivity(int scenario, const std::vector<std::string>& departments,
                                         std::optional<int> level = std::nullopt);

enum class PracticeKind { TaskEmpowerment, EmpowermentToLearn, EmployeeDevelopment };

ExperimentPlan preset_practice(PracticeKind kind);

/// Names accepted by `preset_by_name`.
const std::vector<std::string>& preset_names();

struct PresetOptions {
  std::vector<std::string> departments;  // empty: preset default
  int scenario = 1;
  std::optional<int> level;
};

ExperimentPlan preset_by_name(std::string_view name, const PresetOptions& options = {});

// CSV

void export_csv(const ReplicationSet& set, std::ostream& out);
void export_csv(const ReplicationSet& set, const std::filesystem::path& path);

/// Parses an exported CSV back. Metadata not present in the file
/// (hashes, plan name) is left empty.
ReplicationSet read_csv(std::istream& in);
ReplicationSet read_csv(const std::filesystem::path& path);

/// Renders a double with 6 significant digits, as used in exports.
std::string format_metric(double value);

// Analysis

struct AnalysisOptions {
  double alpha = 0.05;
  std::vector<std::string> dependent_variables;  // empty: every metric
};

/// Normality, variance homogeneity, ANOVA and Tukey per dependent
/// variable. Errors are reported per variable.
nlohmann::json analyze(const ReplicationSet& set, const AnalysisOptions& options);

/// Metadata document written next to results.
nlohmann::json run_metadata(const ExperimentPlan& plan, const ReplicationSet& set);

}  // namespace shopfloor

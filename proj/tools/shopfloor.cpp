// shopfloor: command-line driver for simulations, preset experiments and
// result analysis.
//
// Exit codes: 0 success, 1 usage or validation error, 2 runtime failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "shopfloor/config.hpp"
#include "shopfloor/harness.hpp"

namespace {

using nlohmann::json;
using namespace shopfloor;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CommonFlags {
  std::string config_path;
  std::string dept;
  std::optional<std::uint64_t> seed;
  std::optional<int> reps;
  std::optional<int> weeks;
  std::optional<int> scenario;
  std::optional<int> level;
  std::vector<std::string> sets;
  std::string out;
  std::string trace;
  unsigned jobs = 1;
  bool quiet = false;
};

void add_common(CLI::App* cmd, CommonFlags& f, bool with_config) {
  if (with_config) cmd->add_option("--config", f.config_path, "JSON configuration file");
  cmd->add_option("--dept", f.dept, "Department profile: atv or ww");
  cmd->add_option("--seed", f.seed, "Base seed (falls back to SHOPFLOOR_SEED)");
  cmd->add_option("--reps", f.reps, "Replications per condition")->check(CLI::PositiveNumber);
  cmd->add_option("--weeks", f.weeks, "Simulated weeks")->check(CLI::PositiveNumber);
  cmd->add_option("--scenario", f.scenario, "Weight scenario 1=uniform 2=scale 3=square")
      ->check(CLI::Range(1, 3));
  cmd->add_option("--level", f.level, "Weight scenario level 1..3")->check(CLI::Range(1, 3));
  cmd->add_option("--set", f.sets, "Override a config value: dotted.key=value")
      ->take_all()
      ->allow_extra_args(false);
  cmd->add_option("--jobs", f.jobs, "Parallel replications (0 = all cores)");
  cmd->add_flag("--quiet", f.quiet, "No progress output");
}

std::optional<std::uint64_t> env_seed() {
  const char* s = std::getenv("SHOPFLOOR_SEED");
  if (!s || !*s) return std::nullopt;
  try {
    std::size_t pos = 0;
    const auto v = std::stoull(s, &pos);
    if (pos != std::string(s).size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::logic_error&) {
    throw UsageError(std::string("SHOPFLOOR_SEED is not an unsigned integer: ") + s);
  }
}

json scenario_json(int scenario, int level) {
  switch (scenario) {
    case 1: return {{"kind", "uniform"}, {"value", level}};
    case 2: return {{"kind", "scale"}, {"value", level == 1 ? 1 : level == 2 ? 10 : 100}};
    default: return {{"kind", "square"}, {"value", level}};
  }
}

// Applies flag-level overrides to a config document.
void apply_flags(json& doc, const CommonFlags& f, bool include_dept) {
  if (include_dept && !f.dept.empty()) doc["department"]["profile"] = f.dept;
  if (f.seed) doc["run"]["base_seed"] = *f.seed;
  if (f.reps) doc["run"]["replications"] = *f.reps;
  if (f.weeks) doc["run"]["weeks"] = *f.weeks;
  if (f.scenario) doc["run"]["weight_scenario"] = scenario_json(*f.scenario, f.level.value_or(1));
  for (const auto& s : f.sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--set expects key=value, got '" + s + "'");
    apply_override(doc, s.substr(0, eq), s.substr(eq + 1));
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("malformed JSON: ") + e.what());
  }
}

// Effective config for `run`, `sweep` and `trace`.
Config merged_config(const CommonFlags& f) {
  json doc = f.config_path.empty() ? json::object() : read_json_file(f.config_path);
  const bool seed_in_file = doc.contains("run") && doc["run"].contains("base_seed");
  if (!f.seed && !seed_in_file) {
    if (auto s = env_seed()) doc["run"]["base_seed"] = *s;
  }
  apply_flags(doc, f, true);
  return config_from_json(doc);
}

void apply_to_plan(ExperimentPlan& plan, const CommonFlags& f) {
  std::optional<std::uint64_t> seed = f.seed;
  if (!seed) seed = env_seed();
  for (auto& c : plan.conditions) {
    json doc = config_to_json(c.config);
    apply_flags(doc, f, false);
    if (seed) doc["run"]["base_seed"] = *seed;
    c.config = config_from_json(doc);
  }
  if (seed) plan.base_seed = *seed;
  if (f.reps) plan.replications = *f.reps;
}

std::function<void(std::size_t, std::size_t)> progress(const CommonFlags& f) {
  if (f.quiet) return {};
  return [](std::size_t done, std::size_t total) {
    if (done == total || done % 10 == 0) {
      std::cout << "  " << done << "/" << total << " runs\n" << std::flush;
    }
  };
}

void write_outputs(const ExperimentPlan& plan, const ReplicationSet& set, const CommonFlags& f,
                   const std::vector<std::string>& argv) {
  const std::string out = f.out.empty() ? plan.name + ".csv" : f.out;
  export_csv(set, std::filesystem::path(out));
  json meta = run_metadata(plan, set);
  meta["command_line"] = argv;
  const std::string meta_path = out + ".meta.json";
  std::ofstream m(meta_path);
  if (!m) throw std::runtime_error("cannot open '" + meta_path + "' for writing");
  m << meta.dump(2) << '\n';
  if (!f.quiet) std::cout << "wrote " << out << " and " << meta_path << "\n";
}

int run_plan(ExperimentPlan plan, const CommonFlags& f, const std::vector<std::string>& argv) {
  plan.check();
  if (!f.quiet) {
    std::cout << plan.name << ": " << plan.conditions.size() << " condition(s) x "
              << plan.replications << " replication(s), base seed " << plan.base_seed << "\n";
  }
  RunOptions opts;
  opts.jobs = f.jobs;
  opts.progress = progress(f);
  const ReplicationSet set = run_replications(plan, opts);
  write_outputs(plan, set, f, argv);
  return 0;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  CLI::App app{"Agent-based retail department simulator"};
  app.require_subcommand(1);

  CommonFlags run_flags;
  auto* run = app.add_subcommand("run", "Run replications of one configuration");
  add_common(run, run_flags, true);
  run->add_option("--out", run_flags.out, "CSV output path");
  run->add_option("--trace", run_flags.trace, "Write the event trace of replication 0 here");

  CommonFlags sweep_flags;
  std::string sweep_param;
  std::string sweep_values;
  auto* sweep = app.add_subcommand("sweep", "Vary one config key across values");
  add_common(sweep, sweep_flags, true);
  sweep->add_option("--param", sweep_param, "Dotted config key to vary")->required();
  sweep->add_option("--values", sweep_values, "Comma-separated values")->required();
  sweep->add_option("--out", sweep_flags.out, "CSV output path");

  CommonFlags preset_flags;
  std::string preset_name;
  auto* preset = app.add_subcommand("preset", "Run a named experiment");
  preset->add_option("name", preset_name, "staffing, weights, empowerment, learning, development")
      ->required()
      ->check(CLI::IsMember(preset_names()));
  add_common(preset, preset_flags, false);
  preset->add_option("--out", preset_flags.out, "CSV output path");

  std::string analyze_path;
  std::string analyze_out;
  std::vector<std::string> analyze_dvs;
  double analyze_alpha = 0.05;
  auto* analyze_cmd = app.add_subcommand("analyze", "Statistics on an exported CSV");
  analyze_cmd->add_option("csv", analyze_path, "Results CSV")->required();
  analyze_cmd->add_option("--dv", analyze_dvs, "Dependent variable (repeatable)");
  analyze_cmd->add_option("--alpha", analyze_alpha, "Family-wise alpha")->check(CLI::Range(0.0, 1.0));
  analyze_cmd->add_option("--out", analyze_out, "JSON report path (default stdout)");

  std::string validate_path;
  auto* validate_cmd = app.add_subcommand("validate-config", "Check a configuration file");
  validate_cmd->add_option("file", validate_path, "JSON configuration")->required();

  CommonFlags trace_flags;
  int trace_rep = 0;
  auto* trace = app.add_subcommand("trace", "Write the event trace of one replication");
  add_common(trace, trace_flags, true);
  trace->add_option("--rep", trace_rep, "Replication index")->check(CLI::NonNegativeNumber);
  trace->add_option("--out", trace_flags.out, "Trace path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*run) {
      const Config config = merged_config(run_flags);
      ExperimentPlan plan;
      plan.name = "run";
      plan.replications = config.run.replications;
      plan.base_seed = config.run.base_seed;
      plan.conditions.push_back({"run", config});
      if (!run_flags.trace.empty()) {
        std::ofstream t(run_flags.trace);
        if (!t) throw std::runtime_error("cannot open '" + run_flags.trace + "' for writing");
        run_once(config, replication_seed(plan.base_seed, 0, 0), &t);
      }
      return run_plan(std::move(plan), run_flags, args);
    }
    if (*sweep) {
      const Config base = merged_config(sweep_flags);
      const json base_doc = config_to_json(base);
      std::vector<std::pair<std::string, Config>> levels;
      for (const auto& v : split_list(sweep_values)) {
        json doc = base_doc;
        apply_override(doc, sweep_param, v);
        levels.emplace_back(v, config_from_json(doc));
      }
      if (levels.empty()) throw UsageError("--values is empty");
      return run_plan(make_sweep("sweep", base, sweep_param, levels), sweep_flags, args);
    }
    if (*preset) {
      PresetOptions opts;
      if (!preset_flags.dept.empty() && preset_flags.dept != "both") {
        opts.departments = split_list(preset_flags.dept);
      }
      opts.scenario = preset_flags.scenario.value_or(1);
      opts.level = preset_flags.level;
      ExperimentPlan plan = preset_by_name(preset_name, opts);
      CommonFlags overrides = preset_flags;
      overrides.scenario.reset();  // consumed by the preset itself
      apply_to_plan(plan, overrides);
      return run_plan(std::move(plan), preset_flags, args);
    }
    if (*analyze_cmd) {
      const ReplicationSet set = read_csv(std::filesystem::path(analyze_path));
      AnalysisOptions opts;
      opts.alpha = analyze_alpha;
      opts.dependent_variables = analyze_dvs;
      const json report = analyze(set, opts);
      if (analyze_out.empty()) {
        std::cout << report.dump(2) << '\n';
      } else {
        std::ofstream out(analyze_out);
        if (!out) throw std::runtime_error("cannot open '" + analyze_out + "' for writing");
        out << report.dump(2) << '\n';
      }
      return 0;
    }
    if (*validate_cmd) {
      const Config config = load_config(validate_path);
      std::cout << "ok: " << config.department.name << ", " << config.staffing.total()
                << " staff, " << config.run.replications << " replications\n";
      return 0;
    }
    if (*trace) {
      const Config config = merged_config(trace_flags);
      const auto seed = replication_seed(config.run.base_seed, 0, trace_rep);
      if (trace_flags.out.empty()) {
        run_once(config, seed, &std::cout);
      } else {
        std::ofstream out(trace_flags.out);
        if (!out) throw std::runtime_error("cannot open '" + trace_flags.out + "' for writing");
        run_once(config, seed, &out);
      }
      return 0;
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

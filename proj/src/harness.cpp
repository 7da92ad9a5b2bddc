#include "shopfloor/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "shopfloor/domain.hpp"
#include "shopfloor/rng.hpp"
#include "shopfloor/stats.hpp"

namespace shopfloor {

using nlohmann::json;

namespace {

std::string trim_number(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos == std::string_view::npos ? s.npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string dept_key(std::string_view dept) {
  const DepartmentProfile p = builtin_profile(dept);
  return p.name == "WW" ? "ww" : "atv";
}

std::vector<std::string> default_departments(const std::vector<std::string>& depts) {
  if (!depts.empty()) return depts;
  return {"atv", "ww"};
}

std::string join_label(const std::vector<std::string>& departments, const std::string& dept,
                       const std::string& rest) {
  if (departments.size() < 2) return rest;
  return "dept=" + dept_key(dept) + ";" + rest;
}

}  // namespace

// ---------------------------------------------------------------------------
// Plans

void ExperimentPlan::check() const {
  if (conditions.empty()) throw std::invalid_argument("plan '" + name + "' has no conditions");
  if (replications < 1) throw std::invalid_argument("replications must be >= 1");
  std::set<std::string> labels;
  for (const auto& c : conditions) {
    if (!labels.insert(c.label).second) {
      throw std::invalid_argument("duplicate condition label '" + c.label + "'");
    }
    validate(c.config);
  }
}

ExperimentPlan make_sweep(std::string name, const Config& base, std::string_view factor,
                          const std::vector<std::pair<std::string, Config>>& levels) {
  ExperimentPlan plan;
  plan.name = std::move(name);
  plan.replications = base.run.replications;
  plan.base_seed = base.run.base_seed;
  for (const auto& [value, config] : levels) {
    plan.conditions.push_back({std::string(factor) + "=" + value, config});
  }
  return plan;
}

// ---------------------------------------------------------------------------
// Replication sets

void ReplicationSet::check() const {
  if (replications < 1) throw std::invalid_argument("replication set has no replications");
  if (condition_labels.empty()) throw std::invalid_argument("replication set has no conditions");
  const std::size_t expected = condition_labels.size() * static_cast<std::size_t>(replications);
  if (records.size() != expected) {
    throw std::invalid_argument("incomplete grid: " + std::to_string(records.size()) + " of " +
                                std::to_string(expected) + " (condition, replication) cells");
  }
  for (std::size_t i = 0; i < records.size(); ++i) {
    const std::size_t c = i / replications;
    const int r = static_cast<int>(i % replications);
    if (records[i].condition != c || records[i].replication != r) {
      throw std::invalid_argument("incomplete grid: missing cell (" + condition_labels[c] + ", " +
                                  std::to_string(r) + ")");
    }
  }
}

const RunRecord& ReplicationSet::at(std::size_t condition, int replication) const {
  if (condition >= condition_labels.size() || replication < 0 || replication >= replications) {
    throw std::out_of_range("no such (condition, replication) cell");
  }
  return records.at(condition * replications + replication);
}

std::vector<std::vector<std::optional<double>>> ReplicationSet::column(std::string_view metric) const {
  const MetricField& field = metric_field(metric);
  std::vector<std::vector<std::optional<double>>> out(condition_labels.size());
  for (const auto& rec : records) out.at(rec.condition).push_back(field.value(rec.metrics));
  return out;
}

ReplicationError::ReplicationError(std::size_t condition, int replication, const std::string& what)
    : std::runtime_error("replication failed at condition " + std::to_string(condition) +
                         ", replication " + std::to_string(replication) + ": " + what),
      condition_(condition),
      replication_(replication) {}

std::uint64_t replication_seed(std::uint64_t base_seed, std::size_t condition, int replication) {
  return RngStream::derive_seed(base_seed, {static_cast<std::uint64_t>(condition),
                                            static_cast<std::uint64_t>(replication)});
}

RunMetrics run_once(const Config& config, std::uint64_t seed, std::ostream* trace) {
  Department dept(config, RngStream(seed), TraceSink(trace));
  dept.run();
  return snapshot(dept);
}

ReplicationSet run_replications(const ExperimentPlan& plan, const RunOptions& options) {
  plan.check();
  ReplicationSet set;
  set.plan_name = plan.name;
  set.replications = plan.replications;
  set.base_seed = plan.base_seed;
  set.generator = std::string(kGeneratorName);
  for (const auto& c : plan.conditions) {
    set.condition_labels.push_back(c.label);
    set.config_hashes.push_back(config_hash(c.config));
  }
  const std::size_t total = plan.conditions.size() * static_cast<std::size_t>(plan.replications);
  set.records.resize(total);

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::mutex mutex;
  std::exception_ptr error;
  std::size_t done = 0;

  const auto worker = [&] {
    while (!failed.load()) {
      const std::size_t i = next.fetch_add(1);
      if (i >= total) return;
      const std::size_t c = i / plan.replications;
      const int r = static_cast<int>(i % plan.replications);
      RunRecord rec;
      rec.condition = c;
      rec.replication = r;
      rec.seed = replication_seed(plan.base_seed, c, r);
      try {
        rec.metrics = run_once(plan.conditions[c].config, rec.seed);
      } catch (const std::exception& e) {
        std::lock_guard lock(mutex);
        if (!error) error = std::make_exception_ptr(ReplicationError(c, r, e.what()));
        failed = true;
        return;
      }
      set.records[i] = std::move(rec);
      if (options.progress) {
        std::lock_guard lock(mutex);
        options.progress(++done, total);
      }
    }
  };

  unsigned jobs = options.jobs == 0 ? std::max(1u, std::thread::hardware_concurrency()) : options.jobs;
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, total));
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (unsigned j = 0; j < jobs; ++j) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }
  if (error) std::rethrow_exception(error);
  return set;
}

// ---------------------------------------------------------------------------
// Presets

ExperimentPlan preset_staffing(const std::vector<std::string>& departments) {
  const auto depts = default_departments(departments);
  ExperimentPlan plan;
  plan.name = "staffing";
  plan.dependent_variables = {"transactions", "satisfied_count", "overall_satisfaction"};
  for (const auto& d : depts) {
    Config base = default_config(d);
    plan.replications = base.run.replications;
    plan.base_seed = base.run.base_seed;
    for (int cashiers = 1; cashiers <= 5; ++cashiers) {
      Config c = base;
      c.staffing = {cashiers, 9 - cashiers, 1};
      plan.conditions.push_back(
          {join_label(depts, d, "cashiers=" + std::to_string(cashiers)), std::move(c)});
    }
  }
  return plan;
}

ExperimentPlan preset_weight_sensitivity(int scenario, const std::vector<std::string>& departments,
                                         std::optional<int> level) {
  if (scenario < 1 || scenario > 3) throw std::invalid_argument("scenario must be 1, 2 or 3");
  if (level && (*level < 1 || *level > 3)) throw std::invalid_argument("level must be 1, 2 or 3");
  const auto depts = default_departments(departments);
  ExperimentPlan plan;
  plan.name = "weights-scenario" + std::to_string(scenario);
  plan.dependent_variables = {"overall_satisfaction"};
  for (const auto& d : depts) {
    Config base = default_config(d);
    base.staffing = {3, 6, 1};
    base.practice.refund_loop_enabled = false;
    plan.replications = base.run.replications;
    plan.base_seed = base.run.base_seed;
    for (int l = 1; l <= 3; ++l) {
      if (level && *level != l) continue;
      Config c = base;
      switch (scenario) {
        case 1: c.run.weight_scenario = UniformWeights{l}; break;
        case 2: c.run.weight_scenario = ScaledWeights{l == 1 ? 1 : l == 2 ? 10 : 100}; break;
        default: c.run.weight_scenario = SquareProgression{l}; break;
      }
      plan.conditions.push_back({join_label(depts, d, "level=" + std::to_string(l)), std::move(c)});
    }
  }
  return plan;
}

ExperimentPlan preset_practice(PracticeKind kind) {
  Config base = default_config("atv");
  base.staffing = {3, 7, 2};
  base.department.arrival_rate = 70.0;
  ExperimentPlan plan;
  plan.replications = base.run.replications;
  plan.base_seed = base.run.base_seed;
  const std::vector<double> quarters{0.0, 0.25, 0.5, 0.75, 1.0};
  switch (kind) {
    case PracticeKind::TaskEmpowerment:
      plan.name = "empowerment";
      plan.dependent_variables = {"transactions", "overall_satisfaction_shopping",
                                  "overall_satisfaction_refund"};
      for (double v : quarters) {
        Config c = base;
        c.practice.p_task_empowerment = v;
        plan.conditions.push_back({"empowerment=" + trim_number(v), std::move(c)});
      }
      break;
    case PracticeKind::EmpowermentToLearn:
      plan.name = "learning";
      plan.dependent_variables = {"mean_normal_knowledge", "utilization_normal",
                                  "utilization_expert", "transactions", "overall_satisfaction"};
      for (double v : quarters) {
        Config c = base;
        c.practice.p_learn = v;
        plan.conditions.push_back({"p_learn=" + trim_number(v), std::move(c)});
      }
      break;
    case PracticeKind::EmployeeDevelopment:
      plan.name = "development";
      plan.dependent_variables = {"mean_normal_knowledge", "utilization_normal",
                                  "utilization_expert", "transactions", "overall_satisfaction"};
      for (double v : {0.0, 0.2, 0.4, 0.6, 0.8, 1.0}) {
        Config c = base;
        c.practice.p_learn = 1.0;
        c.practice.promotion_enabled = true;
        c.practice.threshold_fraction = v;
        plan.conditions.push_back({"threshold=" + trim_number(v), std::move(c)});
      }
      break;
  }
  return plan;
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {"staffing", "weights", "empowerment", "learning",
                                                 "development"};
  return names;
}

ExperimentPlan preset_by_name(std::string_view name, const PresetOptions& options) {
  if (name == "staffing") return preset_staffing(options.departments);
  if (name == "weights") {
    return preset_weight_sensitivity(options.scenario, options.departments, options.level);
  }
  if (name == "empowerment") return preset_practice(PracticeKind::TaskEmpowerment);
  if (name == "learning") return preset_practice(PracticeKind::EmpowermentToLearn);
  if (name == "development") return preset_practice(PracticeKind::EmployeeDevelopment);
  throw std::invalid_argument("unknown preset '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// CSV

std::string format_metric(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

namespace {

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

// One RFC-4180 record; false at end of input.
bool read_record(std::istream& in, std::vector<std::string>& fields) {
  fields.clear();
  if (in.peek() == std::char_traits<char>::eof()) return false;
  std::string field;
  bool quoted = false;
  bool any = false;
  char ch;
  while (in.get(ch)) {
    any = true;
    if (quoted) {
      if (ch == '"') {
        if (in.peek() == '"') {
          field += '"';
          in.get();
        } else {
          quoted = false;
        }
      } else {
        field += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (ch == '\r') {
      if (in.peek() == '\n') in.get();
      break;
    } else if (ch == '\n') {
      break;
    } else {
      field += ch;
    }
  }
  if (quoted) throw std::runtime_error("unterminated quoted CSV field");
  if (!any) return false;
  fields.push_back(std::move(field));
  return true;
}

std::vector<std::string> csv_header() {
  std::vector<std::string> h = {"condition", "replication", "seed"};
  for (const auto& f : metric_fields()) h.emplace_back(f.name);
  return h;
}

}  // namespace

void export_csv(const ReplicationSet& set, std::ostream& out) {
  set.check();
  const auto header = csv_header();
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << "\r\n";
  for (const auto& rec : set.records) {
    out << csv_field(set.condition_labels[rec.condition]) << ',' << rec.replication << ','
        << rec.seed;
    for (const auto& f : metric_fields()) {
      out << ',';
      const auto v = f.value(rec.metrics);
      if (!v) continue;
      if (f.integral) {
        out << static_cast<std::int64_t>(*v);
      } else {
        out << format_metric(*v);
      }
    }
    out << "\r\n";
  }
}

void export_csv(const ReplicationSet& set, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  export_csv(set, out);
  out.flush();
  if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

ReplicationSet read_csv(std::istream& in) {
  std::vector<std::string> fields;
  if (!read_record(in, fields)) throw std::runtime_error("empty CSV");
  const auto header = csv_header();
  if (fields != header) throw std::runtime_error("unexpected CSV header");

  ReplicationSet set;
  set.generator = std::string(kGeneratorName);
  std::map<std::string, std::size_t> index;
  std::vector<RunRecord> rows;
  std::size_t line = 1;
  while (read_record(in, fields)) {
    ++line;
    if (fields.size() == 1 && fields[0].empty()) continue;
    if (fields.size() != header.size()) {
      throw std::runtime_error("CSV line " + std::to_string(line) + " has " +
                               std::to_string(fields.size()) + " fields, expected " +
                               std::to_string(header.size()));
    }
    RunRecord rec;
    auto [it, inserted] = index.emplace(fields[0], set.condition_labels.size());
    if (inserted) set.condition_labels.push_back(fields[0]);
    rec.condition = it->second;
    try {
      rec.replication = std::stoi(fields[1]);
      rec.seed = std::stoull(fields[2]);
      for (std::size_t i = 0; i < metric_fields().size(); ++i) {
        const std::string& cell = fields[3 + i];
        const auto& f = metric_fields()[i];
        if (cell.empty()) {
          f.assign(rec.metrics, std::nullopt);
        } else if (f.integral) {
          f.assign(rec.metrics, static_cast<double>(std::stoll(cell)));
        } else {
          f.assign(rec.metrics, std::stod(cell));
        }
      }
    } catch (const std::logic_error&) {
      throw std::runtime_error("CSV line " + std::to_string(line) + " has a malformed number");
    }
    rows.push_back(std::move(rec));
  }
  if (rows.empty()) throw std::runtime_error("CSV has no data rows");
  std::stable_sort(rows.begin(), rows.end(), [](const RunRecord& a, const RunRecord& b) {
    return a.condition != b.condition ? a.condition < b.condition : a.replication < b.replication;
  });
  int max_rep = 0;
  for (const auto& r : rows) max_rep = std::max(max_rep, r.replication);
  set.replications = max_rep + 1;
  set.records = std::move(rows);
  set.check();
  return set;
}

ReplicationSet read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  return read_csv(in);
}

// ---------------------------------------------------------------------------
// Analysis

namespace {

struct Factorial {
  std::vector<std::string> factors;
  std::vector<std::vector<std::string>> levels;  // per factor, first-appearance order
  std::vector<std::pair<std::size_t, std::size_t>> cell_of;  // per condition
};

// Recognises labels "a=x;b=y" forming a complete two-factor grid.
std::optional<Factorial> two_factor_layout(const std::vector<std::string>& labels) {
  Factorial f;
  for (std::size_t c = 0; c < labels.size(); ++c) {
    const auto parts = split(labels[c], ';');
    if (parts.size() != 2) return std::nullopt;
    std::vector<std::string> names;
    std::vector<std::string> values;
    for (const auto& p : parts) {
      const auto eq = p.find('=');
      if (eq == std::string::npos) return std::nullopt;
      names.push_back(p.substr(0, eq));
      values.push_back(p.substr(eq + 1));
    }
    if (c == 0) {
      f.factors = names;
      f.levels.resize(2);
    } else if (names != f.factors) {
      return std::nullopt;
    }
    std::size_t idx[2];
    for (int k = 0; k < 2; ++k) {
      auto& lv = f.levels[k];
      auto it = std::find(lv.begin(), lv.end(), values[k]);
      if (it == lv.end()) {
        lv.push_back(values[k]);
        it = lv.end() - 1;
      }
      idx[k] = static_cast<std::size_t>(it - lv.begin());
    }
    f.cell_of.emplace_back(idx[0], idx[1]);
  }
  if (f.levels[0].size() < 2 || f.levels[1].size() < 2) return std::nullopt;
  if (f.levels[0].size() * f.levels[1].size() != labels.size()) return std::nullopt;
  std::set<std::pair<std::size_t, std::size_t>> seen(f.cell_of.begin(), f.cell_of.end());
  if (seen.size() != labels.size()) return std::nullopt;
  return f;
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json effect_json(const stats::AnovaEffect& e, const std::string& name, double df_within) {
  return json{{"effect", name},
              {"ss", e.ss},
              {"df", e.df},
              {"df_within", df_within},
              {"ms", e.ms},
              {"f", finite_or_null(e.f)},
              {"p", e.p},
              {"eta_squared", e.eta_squared},
              {"partial_eta_squared", e.partial_eta_squared}};
}

json tukey_json(const stats::TukeyResult& t, const std::vector<std::string>& names,
                const std::string& factor) {
  json pairs = json::array();
  for (const auto& p : t.pairs) {
    pairs.push_back({{"a", names[p.first]},
                     {"b", names[p.second]},
                     {"mean_difference", p.mean_difference},
                     {"q", finite_or_null(p.q)},
                     {"p", p.p},
                     {"significant", p.significant}});
  }
  json out{{"q_critical", t.q_critical}, {"df_within", t.df_within}, {"pairs", pairs}};
  if (!factor.empty()) out["factor"] = factor;
  return out;
}

json analyze_variable(const ReplicationSet& set, const std::string& dv, double alpha_corrected,
                      const std::optional<Factorial>& layout) {
  json out;
  const auto column = set.column(dv);
  std::vector<stats::Sample> groups;
  for (std::size_t c = 0; c < column.size(); ++c) {
    stats::Sample g;
    for (const auto& v : column[c]) {
      if (!v) throw std::invalid_argument("condition '" + set.condition_labels[c] +
                                          "' has missing values");
      g.push_back(*v);
    }
    groups.push_back(std::move(g));
  }

  json desc = json::array();
  json ks = json::array();
  for (std::size_t c = 0; c < groups.size(); ++c) {
    json d{{"condition", set.condition_labels[c]},
           {"n", groups[c].size()},
           {"mean", stats::mean(groups[c])}};
    d["sd"] = groups[c].size() >= 2 ? json(stats::describe(groups[c]).sd) : json(nullptr);
    desc.push_back(d);
    json k{{"condition", set.condition_labels[c]}};
    try {
      const auto r = stats::ks_normality(groups[c]);
      k["d"] = r.d;
      k["p"] = r.p;
    } catch (const std::exception& e) {
      k["error"] = e.what();
    }
    ks.push_back(k);
  }
  out["descriptives"] = desc;
  out["ks_normality"] = ks;

  if (groups.size() < 2) {
    out["note"] = "single condition: Levene, ANOVA and Tukey skipped";
    return out;
  }

  const auto lev = stats::levene(groups);
  out["levene"] = {{"w", lev.w}, {"df1", lev.df1}, {"df2", lev.df2}, {"p", lev.p},
                   {"degenerate", lev.degenerate}};

  bool balanced = true;
  for (const auto& g : groups) balanced = balanced && g.size() == groups.front().size();
  if (layout && balanced) {
    const auto& f = *layout;
    std::vector<std::vector<stats::Sample>> cells(
        f.levels[0].size(), std::vector<stats::Sample>(f.levels[1].size()));
    for (std::size_t c = 0; c < groups.size(); ++c) {
      cells[f.cell_of[c].first][f.cell_of[c].second] = groups[c];
    }
    const auto a = stats::anova_twoway(cells);
    json effects = json::array();
    effects.push_back(effect_json(a.effect("A"), f.factors[0], a.df_within));
    effects.push_back(effect_json(a.effect("B"), f.factors[1], a.df_within));
    effects.push_back(effect_json(a.effect("AxB"), f.factors[0] + "x" + f.factors[1], a.df_within));
    out["anova"] = {{"design", "two-way"}, {"effects", effects}, {"ss_within", a.ss_within},
                    {"df_within", a.df_within}, {"ms_within", a.ms_within}};
    json tukey = json::array();
    for (int k = 0; k < 2; ++k) {
      const std::size_t levels = f.levels[k].size();
      std::vector<double> means(levels, 0.0);
      std::vector<double> sizes(levels, 0.0);
      for (std::size_t c = 0; c < groups.size(); ++c) {
        const std::size_t l = k == 0 ? f.cell_of[c].first : f.cell_of[c].second;
        for (double x : groups[c]) means[l] += x;
        sizes[l] += static_cast<double>(groups[c].size());
      }
      for (std::size_t l = 0; l < levels; ++l) means[l] /= sizes[l];
      tukey.push_back(tukey_json(
          stats::tukey_hsd(means, sizes, a.ms_within, a.df_within, alpha_corrected), f.levels[k],
          f.factors[k]));
    }
    out["tukey"] = tukey;
  } else {
    const auto a = stats::anova_oneway(groups);
    out["anova"] = {{"design", "one-way"},
                    {"effects", json::array({effect_json(a.effects.front(), "condition", a.df_within)})},
                    {"ss_within", a.ss_within},
                    {"df_within", a.df_within},
                    {"ms_within", a.ms_within}};
    out["tukey"] = json::array(
        {tukey_json(stats::tukey_hsd(groups, alpha_corrected), set.condition_labels, "")});
  }
  return out;
}

}  // namespace

json analyze(const ReplicationSet& set, const AnalysisOptions& options) {
  set.check();
  std::vector<std::string> dvs = options.dependent_variables;
  if (dvs.empty()) {
    for (const auto& f : metric_fields()) dvs.emplace_back(f.name);
  }
  for (const auto& dv : dvs) metric_field(dv);
  const double corrected = stats::bonferroni(options.alpha, static_cast<int>(dvs.size()));
  const auto layout = two_factor_layout(set.condition_labels);

  json report;
  report["conditions"] = set.condition_labels;
  report["replications"] = set.replications;
  report["alpha"] = options.alpha;
  report["bonferroni_alpha"] = corrected;
  report["dependent_variables"] = dvs;
  report["design"] = layout ? "two-way" : "one-way";
  if (layout) report["factors"] = layout->factors;
  json results = json::object();
  for (const auto& dv : dvs) {
    try {
      results[dv] = analyze_variable(set, dv, corrected, layout);
    } catch (const std::exception& e) {
      results[dv] = {{"error", e.what()}};
    }
  }
  report["results"] = results;
  return report;
}

json run_metadata(const ExperimentPlan& plan, const ReplicationSet& set) {
  json conditions = json::array();
  for (std::size_t c = 0; c < plan.conditions.size(); ++c) {
    char hash[17];
    std::snprintf(hash, sizeof hash, "%016llx",
                  static_cast<unsigned long long>(set.config_hashes.at(c)));
    conditions.push_back({{"label", plan.conditions[c].label},
                          {"config_hash", hash},
                          {"config", config_to_json(plan.conditions[c].config)}});
  }
  return json{{"plan", plan.name},
              {"engine_version", set.engine_version},
              {"generator", set.generator},
              {"base_seed", set.base_seed},
              {"replications", set.replications},
              {"seed_derivation", "splitmix64 chain over (base_seed, condition, replication)"},
              {"dependent_variables", plan.dependent_variables},
              {"conditions", conditions}};
}

}  // namespace shopfloor

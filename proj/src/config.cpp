#include "shopfloor/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace shopfloor {

using nlohmann::json;

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

json triangular_to_json(const Triangular& t) {
  return json{{"min", t.min}, {"mode", t.mode}, {"max", t.max}};
}

// Keys whose A&TV defaults are published values; everything else is an
// implementation default.
const std::set<std::string>& atv_published_keys() {
  static const std::set<std::string> keys = {
      "department.arrival_rate",      "department.p_need_help",
      "department.p_buy_after_browse", "department.p_buy_after_help",
      "department.browse",            "department.help_duration",
      "department.pay_patience",      "practice.cashier_approval",
      "practice.expert_approval",     "run.weeks",
      "run.replications",             "weights.help.seek",
      "weights.help.immediate_service", "weights.help.wait",
      "weights.help.abandon",         "weights.leave_without_purchase",
  };
  return keys;
}

// Schema walker. Every key read is removed from `pending`; leftovers are
// unknown keys and rejected.
class Reader {
 public:
  Reader(const json& obj, std::string prefix, std::map<std::string, Source>& provenance)
      : obj_(obj), prefix_(std::move(prefix)), provenance_(provenance) {
    if (!obj_.is_object()) throw ConfigError(prefix_, "expected an object");
    for (const auto& item : obj_.items()) pending_.insert(item.key());
  }

  std::string path(const std::string& key) const {
    return prefix_.empty() ? key : prefix_ + "." + key;
  }

  const json* take(const std::string& key) {
    auto it = obj_.find(key);
    if (it == obj_.end()) return nullptr;
    pending_.erase(key);
    provenance_[path(key)] = Source::User;
    return &*it;
  }

  void number(const std::string& key, double& dst) {
    if (const json* v = take(key)) {
      if (!v->is_number()) throw ConfigError(path(key), "expected a number");
      dst = v->get<double>();
      if (!std::isfinite(dst)) throw ConfigError(path(key), "must be finite");
    }
  }

  void integer(const std::string& key, int& dst) {
    if (const json* v = take(key)) {
      if (!v->is_number_integer()) throw ConfigError(path(key), "expected an integer");
      dst = v->get<int>();
    }
  }

  void unsigned64(const std::string& key, std::uint64_t& dst) {
    if (const json* v = take(key)) {
      if (!v->is_number_unsigned() && !(v->is_number_integer() && v->get<std::int64_t>() >= 0)) {
        throw ConfigError(path(key), "expected a non-negative integer");
      }
      dst = v->get<std::uint64_t>();
    }
  }

  void boolean(const std::string& key, bool& dst) {
    if (const json* v = take(key)) {
      if (!v->is_boolean()) throw ConfigError(path(key), "expected true or false");
      dst = v->get<bool>();
    }
  }

  void string(const std::string& key, std::string& dst) {
    if (const json* v = take(key)) {
      if (!v->is_string()) throw ConfigError(path(key), "expected a string");
      dst = v->get<std::string>();
    }
  }

  void triangular(const std::string& key, Triangular& dst) {
    if (const json* v = take(key)) {
      const std::string where = path(key);
      std::map<std::string, Source> scratch;
      Reader inner(*v, where, scratch);
      inner.number("min", dst.min);
      inner.number("mode", dst.mode);
      inner.number("max", dst.max);
      if (!v->contains("min") || !v->contains("mode") || !v->contains("max")) {
        throw ConfigError(where, "triangular needs min, mode and max");
      }
      inner.finish();
    }
  }

  template <typename F>
  void object(const std::string& key, F&& body) {
    if (auto it = obj_.find(key); it != obj_.end()) {
      pending_.erase(key);
      Reader inner(*it, path(key), provenance_);
      body(inner);
      inner.finish();
    }
  }

  void finish() const {
    if (!pending_.empty()) throw ConfigError(path(*pending_.begin()), "unknown key");
  }

  const json& raw() const { return obj_; }

 private:
  const json& obj_;
  std::string prefix_;
  std::map<std::string, Source>& provenance_;
  std::set<std::string> pending_;
};

void check_probability(const std::string& key, double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ConfigError(key, "probability must lie in [0, 1], got " + std::to_string(p));
  }
}

void check_triangular(const std::string& key, const Triangular& t) {
  if (!(t.min >= 0.0)) throw ConfigError(key, "min must be non-negative");
  if (!(t.min <= t.mode && t.mode <= t.max)) {
    throw ConfigError(key, "triangular parameters must satisfy min <= mode <= max");
  }
}

json scenario_to_json(const WeightScenario& s) {
  if (const auto* u = std::get_if<UniformWeights>(&s)) return {{"kind", "uniform"}, {"value", u->value}};
  if (const auto* k = std::get_if<ScaledWeights>(&s)) return {{"kind", "scale"}, {"value", k->factor}};
  if (const auto* q = std::get_if<SquareProgression>(&s)) return {{"kind", "square"}, {"value", q->level}};
  return {{"kind", "none"}};
}

WeightScenario scenario_from_json(const json& j, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where, "expected an object");
  for (const auto& item : j.items()) {
    if (item.key() != "kind" && item.key() != "value") {
      throw ConfigError(where + "." + item.key(), "unknown key");
    }
  }
  const std::string kind = j.value("kind", std::string("none"));
  if (kind == "none") return std::monostate{};
  if (!j.contains("value") || !j["value"].is_number_integer()) {
    throw ConfigError(where + ".value", "expected an integer");
  }
  const auto value = j["value"].get<std::int64_t>();
  if (kind == "uniform") return UniformWeights{value};
  if (kind == "scale") return ScaledWeights{value};
  if (kind == "square") return SquareProgression{static_cast<int>(value)};
  throw ConfigError(where + ".kind", "expected one of none, uniform, scale, square");
}

void set_path(json& doc, std::string_view dotted, json value) {
  // Weight keys carry their own dot ("weights.help.seek").
  if (dotted.substr(0, 8) == "weights.") {
    doc["weights"][std::string(dotted.substr(8))] = std::move(value);
    return;
  }
  json* node = &doc;
  std::string_view rest = dotted;
  for (auto dot = rest.find('.'); dot != std::string_view::npos; dot = rest.find('.')) {
    std::string head(rest.substr(0, dot));
    if (head.empty()) throw ConfigError(std::string(dotted), "empty path component");
    if (!node->contains(head) || !(*node)[head].is_object()) (*node)[head] = json::object();
    node = &(*node)[head];
    rest = rest.substr(dot + 1);
  }
  if (rest.empty()) throw ConfigError(std::string(dotted), "empty path component");
  (*node)[std::string(rest)] = std::move(value);
}

}  // namespace

int PracticeConfig::promotion_points() const {
  if (threshold_fraction <= 0.0) return 1;
  // Guard against products such as 0.8 * 70 landing just above an integer.
  return std::max(1, static_cast<int>(std::ceil(threshold_fraction * k_max - 1e-9)));
}

std::string_view source_name(Source s) {
  switch (s) {
    case Source::Published: return "paper";
    case Source::Default: return "default";
    case Source::User: return "user";
  }
  return "default";
}

DepartmentProfile atv_profile() {
  DepartmentProfile p;
  p.name = "A&TV";
  p.arrival_rate = 70.0;
  p.p_need_help = 0.38;
  p.p_buy_after_browse = 0.37;
  p.p_buy_after_help = 0.56;
  p.p_buy_without_help = 0.20;
  p.p_refund_visit = 0.05;
  p.p_shop_after_refund = 0.30;
  p.p_escalate = 0.031;
  p.browse = {1, 7, 15};
  p.help_duration = {3, 15, 30};
  p.pay_duration = {1, 3, 6};
  p.refund_duration = {2, 5, 10};
  p.authorization_duration = {1, 3, 7};
  p.pay_patience = {5, 12, 20};
  p.help_patience = {3, 8, 15};
  p.refund_patience = {5, 12, 20};
  return p;
}

DepartmentProfile ww_profile() {
  DepartmentProfile p;
  p.name = "WW";
  p.arrival_rate = 110.0;
  p.p_need_help = 0.20;
  p.p_buy_after_browse = 0.50;
  p.p_buy_after_help = 0.65;
  p.p_buy_without_help = 0.25;
  p.p_refund_visit = 0.06;
  p.p_shop_after_refund = 0.35;
  p.p_escalate = 0.006;
  p.browse = {1, 5, 12};
  p.help_duration = {2, 8, 15};
  p.pay_duration = {1, 2, 5};
  p.refund_duration = {2, 4, 8};
  p.authorization_duration = {1, 2, 5};
  p.pay_patience = {5, 12, 20};
  p.help_patience = {3, 8, 15};
  p.refund_patience = {5, 12, 20};
  return p;
}

DepartmentProfile builtin_profile(std::string_view name) {
  const std::string key = lower(name);
  if (key == "atv" || key == "a&tv") return atv_profile();
  if (key == "ww") return ww_profile();
  throw ConfigError("department.profile", "unknown department '" + std::string(name) +
                                              "' (expected atv or ww)");
}

Config default_config(std::string_view department) {
  Config c;
  c.department = builtin_profile(department);
  const bool is_atv = c.department.name == "A&TV";
  json doc = config_to_json(c);
  doc.erase("provenance");
  for (const auto& [section, body] : doc.items()) {
    if (!body.is_object()) continue;
    for (const auto& item : body.items()) {
      const std::string key = section + "." + item.key();
      if (key == "department.profile" || key == "department.name") continue;
      const bool published = atv_published_keys().count(key) > 0 &&
                              (is_atv || section != "department");
      c.provenance[key] = published ? Source::Published : Source::Default;
    }
  }
  return c;
}

json config_to_json(const Config& c) {
  const auto& d = c.department;
  json dept = {
      {"name", d.name},
      {"arrival_rate", d.arrival_rate},
      {"p_need_help", d.p_need_help},
      {"p_buy_after_browse", d.p_buy_after_browse},
      {"p_buy_after_help", d.p_buy_after_help},
      {"p_buy_without_help", d.p_buy_without_help},
      {"p_refund_visit", d.p_refund_visit},
      {"p_shop_after_refund", d.p_shop_after_refund},
      {"p_escalate", d.p_escalate},
      {"browse", triangular_to_json(d.browse)},
      {"help_duration", triangular_to_json(d.help_duration)},
      {"pay_duration", triangular_to_json(d.pay_duration)},
      {"refund_duration", triangular_to_json(d.refund_duration)},
      {"authorization_duration", triangular_to_json(d.authorization_duration)},
      {"pay_patience", triangular_to_json(d.pay_patience)},
      {"help_patience", triangular_to_json(d.help_patience)},
      {"refund_patience", triangular_to_json(d.refund_patience)},
  };
  json weights = json::object();
  for (std::size_t i = 0; i < kTransitionCount; ++i) {
    const auto t = static_cast<Transition>(i);
    weights[std::string(transition_name(t))] = c.weights[t];
  }
  json provenance = json::object();
  for (const auto& [key, src] : c.provenance) provenance[key] = std::string(source_name(src));
  return json{
      {"department", dept},
      {"staffing",
       {{"cashiers", c.staffing.cashiers},
        {"normals", c.staffing.normals},
        {"experts", c.staffing.experts}}},
      {"practice",
       {{"p_task_empowerment", c.practice.p_task_empowerment},
        {"cashier_approval", c.practice.cashier_approval},
        {"expert_approval", c.practice.expert_approval},
        {"p_learn", c.practice.p_learn},
        {"promotion_enabled", c.practice.promotion_enabled},
        {"threshold_fraction", c.practice.threshold_fraction},
        {"k_max", c.practice.k_max},
        {"refund_loop_enabled", c.practice.refund_loop_enabled}}},
      {"run",
       {{"weeks", c.run.weeks},
        {"open_hours_per_day", c.run.open_hours_per_day},
        {"days_per_week", c.run.days_per_week},
        {"replications", c.run.replications},
        {"base_seed", c.run.base_seed},
        {"weight_scenario", scenario_to_json(c.run.weight_scenario)}}},
      {"weights", weights},
      {"provenance", provenance},
  };
}

Config config_from_json(const json& doc) {
  if (!doc.is_object()) throw ConfigError("", "top level must be an object");

  std::string profile = "atv";
  if (auto it = doc.find("department"); it != doc.end() && it->is_object()) {
    if (auto p = it->find("profile"); p != it->end()) {
      if (!p->is_string()) throw ConfigError("department.profile", "expected a string");
      profile = p->get<std::string>();
    }
  }
  Config c = default_config(profile);
  auto& prov = c.provenance;

  Reader top(doc, "", prov);
  top.object("department", [&](Reader& r) {
    auto& d = c.department;
    std::string ignored;
    r.string("profile", ignored);
    prov.erase("department.profile");
    r.string("name", d.name);
    prov.erase("department.name");
    r.number("arrival_rate", d.arrival_rate);
    r.number("p_need_help", d.p_need_help);
    r.number("p_buy_after_browse", d.p_buy_after_browse);
    r.number("p_buy_after_help", d.p_buy_after_help);
    r.number("p_buy_without_help", d.p_buy_without_help);
    r.number("p_refund_visit", d.p_refund_visit);
    r.number("p_shop_after_refund", d.p_shop_after_refund);
    r.number("p_escalate", d.p_escalate);
    r.triangular("browse", d.browse);
    r.triangular("help_duration", d.help_duration);
    r.triangular("pay_duration", d.pay_duration);
    r.triangular("refund_duration", d.refund_duration);
    r.triangular("authorization_duration", d.authorization_duration);
    r.triangular("pay_patience", d.pay_patience);
    r.triangular("help_patience", d.help_patience);
    r.triangular("refund_patience", d.refund_patience);
  });
  top.object("staffing", [&](Reader& r) {
    r.integer("cashiers", c.staffing.cashiers);
    r.integer("normals", c.staffing.normals);
    r.integer("experts", c.staffing.experts);
  });
  top.object("practice", [&](Reader& r) {
    auto& p = c.practice;
    r.number("p_task_empowerment", p.p_task_empowerment);
    r.number("cashier_approval", p.cashier_approval);
    r.number("expert_approval", p.expert_approval);
    r.number("p_learn", p.p_learn);
    r.boolean("promotion_enabled", p.promotion_enabled);
    r.number("threshold_fraction", p.threshold_fraction);
    r.integer("k_max", p.k_max);
    r.boolean("refund_loop_enabled", p.refund_loop_enabled);
  });
  top.object("run", [&](Reader& r) {
    auto& run = c.run;
    r.integer("weeks", run.weeks);
    r.number("open_hours_per_day", run.open_hours_per_day);
    r.integer("days_per_week", run.days_per_week);
    r.integer("replications", run.replications);
    r.unsigned64("base_seed", run.base_seed);
    if (const json* s = r.take("weight_scenario")) {
      run.weight_scenario = scenario_from_json(*s, "run.weight_scenario");
    }
  });
  if (const json* w = top.take("weights")) {
    prov.erase("weights");
    if (!w->is_object()) throw ConfigError("weights", "expected an object");
    for (const auto& item : w->items()) {
      const std::string key = "weights." + item.key();
      Transition t;
      try {
        t = transition_from_name(item.key());
      } catch (const std::invalid_argument&) {
        throw ConfigError(key, "unknown transition");
      }
      if (!item.value().is_number_integer()) throw ConfigError(key, "expected an integer");
      c.weights.set(t, item.value().get<std::int64_t>());
      prov[key] = Source::User;
    }
  }
  if (const json* p = top.take("provenance")) {
    prov.erase("provenance");
    if (!p->is_object()) throw ConfigError("provenance", "expected an object");
    for (const auto& item : p->items()) {
      const std::string src = item.value().is_string() ? item.value().get<std::string>() : "";
      if (src == "paper") prov[item.key()] = Source::Published;
      else if (src == "default") prov[item.key()] = Source::Default;
      else if (src == "user") prov[item.key()] = Source::User;
      else throw ConfigError("provenance." + item.key(), "expected paper, default or user");
    }
  }
  top.finish();
  validate(c);
  return c;
}

void validate(const Config& c) {
  const auto& d = c.department;
  if (!(d.arrival_rate > 0.0)) throw ConfigError("department.arrival_rate", "must be positive");
  check_probability("department.p_need_help", d.p_need_help);
  check_probability("department.p_buy_after_browse", d.p_buy_after_browse);
  check_probability("department.p_buy_after_help", d.p_buy_after_help);
  check_probability("department.p_buy_without_help", d.p_buy_without_help);
  check_probability("department.p_refund_visit", d.p_refund_visit);
  check_probability("department.p_shop_after_refund", d.p_shop_after_refund);
  check_probability("department.p_escalate", d.p_escalate);
  check_triangular("department.browse", d.browse);
  check_triangular("department.help_duration", d.help_duration);
  check_triangular("department.pay_duration", d.pay_duration);
  check_triangular("department.refund_duration", d.refund_duration);
  check_triangular("department.authorization_duration", d.authorization_duration);
  check_triangular("department.pay_patience", d.pay_patience);
  check_triangular("department.help_patience", d.help_patience);
  check_triangular("department.refund_patience", d.refund_patience);

  const auto& s = c.staffing;
  if (s.cashiers < 0) throw ConfigError("staffing.cashiers", "must be non-negative");
  if (s.normals < 0) throw ConfigError("staffing.normals", "must be non-negative");
  if (s.experts < 0) throw ConfigError("staffing.experts", "must be non-negative");
  const bool purchases_possible = d.p_buy_after_browse > 0 || d.p_buy_after_help > 0 ||
                                  d.p_buy_without_help > 0 ||
                                  (c.practice.refund_loop_enabled && d.p_refund_visit > 0);
  if (purchases_possible && s.cashiers < 1) {
    throw ConfigError("staffing.cashiers", "at least one cashier is needed when customers can pay");
  }
  const bool authorizations_possible = c.practice.refund_loop_enabled && d.p_refund_visit > 0 &&
                                       c.practice.p_task_empowerment < 1.0;
  if (authorizations_possible && s.experts < 1) {
    throw ConfigError("staffing.experts",
                      "at least one expert is needed to authorise refunds below full empowerment");
  }

  const auto& p = c.practice;
  check_probability("practice.p_task_empowerment", p.p_task_empowerment);
  check_probability("practice.cashier_approval", p.cashier_approval);
  check_probability("practice.expert_approval", p.expert_approval);
  check_probability("practice.p_learn", p.p_learn);
  check_probability("practice.threshold_fraction", p.threshold_fraction);
  if (p.k_max < 1) throw ConfigError("practice.k_max", "must be at least 1");

  const auto& r = c.run;
  if (r.weeks < 1) throw ConfigError("run.weeks", "must be at least 1");
  if (r.replications < 1) throw ConfigError("run.replications", "must be at least 1");
  if (r.days_per_week < 1 || r.days_per_week > 7) {
    throw ConfigError("run.days_per_week", "must lie in 1..7");
  }
  if (!(r.open_hours_per_day > 0.0 && r.open_hours_per_day <= 24.0)) {
    throw ConfigError("run.open_hours_per_day", "must lie in (0, 24]");
  }
  try {
    (void)apply_scenario(c.weights, r.weight_scenario);
  } catch (const std::exception& e) {
    throw ConfigError("run.weight_scenario", e.what());
  }
}

Config load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("", path.string() + " is not valid JSON: " + e.what());
  }
  return config_from_json(doc);
}

void apply_override(json& doc, std::string_view dotted, std::string_view value) {
  json parsed;
  try {
    parsed = json::parse(value);
  } catch (const json::parse_error&) {
    parsed = std::string(value);
  }
  set_path(doc, dotted, std::move(parsed));
}

std::uint64_t config_hash(const Config& config) {
  json doc = config_to_json(config);
  doc.erase("provenance");
  const std::string text = doc.dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace shopfloor

#include "indextune/scenario.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

namespace indextune {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ScenarioError(fmt::format("{}: {}", where, what));
}

const json& require(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) fail(where, fmt::format("missing \"{}\"", key));
  return obj.at(key);
}

template <typename T>
T get_or(const json& obj, const char* key, T fallback, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    fail(fmt::format("{}.{}", where, key), e.what());
  }
}

double positive(double v, const std::string& where) {
  if (!(v > 0.0) || !std::isfinite(v)) fail(where, "must be a positive number");
  return v;
}

ColumnId column_of(const Schema& schema, TableId table, const json& name,
                   const std::string& where) {
  if (!name.is_string()) fail(where, "column name must be a string");
  auto c = schema.find_column(table, name.get<std::string>());
  if (!c) {
    fail(where, fmt::format("unknown column \"{}\" on table \"{}\"", name.get<std::string>(),
                            schema.table(table).name));
  }
  return *c;
}

void parse_tables(const json& tables, Schema& schema) {
  if (!tables.is_array() || tables.empty()) fail("tables", "expected a non-empty array");
  for (std::size_t i = 0; i < tables.size(); ++i) {
    const auto where = fmt::format("tables[{}]", i);
    const auto& t = tables[i];
    const auto name = get_or<std::string>(t, "name", "", where);
    const auto rows = get_or<std::uint64_t>(t, "rows", 0, where);
    if (name.empty()) fail(where, "missing \"name\"");
    if (rows == 0) fail(where, "\"rows\" must be >= 1");
    TableId id{};
    try {
      id = schema.add_table(name, rows);
    } catch (const std::invalid_argument& e) {
      fail(where, e.what());
    }
    const auto& cols = require(t, "columns", where);
    if (!cols.is_array() || cols.empty()) fail(where, "\"columns\" must be a non-empty array");
    for (std::size_t j = 0; j < cols.size(); ++j) {
      const auto cwhere = fmt::format("{}.columns[{}]", where, j);
      const auto cname = get_or<std::string>(cols[j], "name", "", cwhere);
      const auto width = get_or<std::uint32_t>(cols[j], "width", 0, cwhere);
      const auto distinct = get_or<std::uint64_t>(cols[j], "distinct", rows, cwhere);
      if (cname.empty()) fail(cwhere, "missing \"name\"");
      if (width == 0) fail(cwhere, "\"width\" must be >= 1");
      try {
        schema.add_column(id, cname, width, distinct);
      } catch (const std::invalid_argument& e) {
        fail(cwhere, e.what());
      }
    }
  }
}

std::vector<QueryTemplateSpec> parse_templates(const json& templates, const Schema& schema) {
  if (!templates.is_array() || templates.empty()) fail("templates", "expected a non-empty array");
  std::vector<QueryTemplateSpec> out;
  for (std::size_t i = 0; i < templates.size(); ++i) {
    const auto where = fmt::format("templates[{}]", i);
    QueryTemplateSpec spec;
    spec.name = get_or<std::string>(templates[i], "name", fmt::format("q{}", i + 1), where);
    const auto& accesses = require(templates[i], "accesses", where);
    if (!accesses.is_array() || accesses.empty()) fail(where, "\"accesses\" must be non-empty");
    for (std::size_t j = 0; j < accesses.size(); ++j) {
      const auto awhere = fmt::format("{}.accesses[{}]", where, j);
      const auto& a = accesses[j];
      const auto tname = get_or<std::string>(a, "table", "", awhere);
      auto table = schema.find_table(tname);
      if (!table) fail(awhere, fmt::format("unknown table \"{}\"", tname));
      TableAccessTemplate access;
      access.table = *table;
      if (a.contains("predicates")) {
        for (const auto& p : a.at("predicates")) {
          PredicateTemplate pred;
          pred.column = column_of(schema, *table, require(p, "column", awhere), awhere);
          const auto& sel = require(p, "selectivity", awhere);
          if (sel.is_number()) {
            pred.selectivity_lo = pred.selectivity_hi = sel.get<double>();
          } else if (sel.is_array() && sel.size() == 2 && sel[0].is_number() &&
                     sel[1].is_number()) {
            pred.selectivity_lo = sel[0].get<double>();
            pred.selectivity_hi = sel[1].get<double>();
          } else {
            fail(awhere, "\"selectivity\" must be a number or [lo, hi]");
          }
          if (!(pred.selectivity_lo > 0.0 && pred.selectivity_lo <= pred.selectivity_hi &&
                pred.selectivity_hi <= 1.0)) {
            fail(awhere, "selectivity must satisfy 0 < lo <= hi <= 1");
          }
          access.predicates.push_back(pred);
        }
      }
      if (a.contains("payload")) {
        for (const auto& c : a.at("payload")) {
          access.payload.push_back(column_of(schema, *table, c, awhere));
        }
      }
      spec.accesses.push_back(std::move(access));
    }
    out.push_back(std::move(spec));
  }
  return out;
}

CostModel parse_cost(const json& j) {
  CostModel cost;
  const std::string where = "cost_model";
  cost.seq_read_rate = get_or<double>(j, "seq_read_rate", cost.seq_read_rate, where);
  cost.index_seek_overhead = get_or<double>(j, "index_seek_overhead", cost.index_seek_overhead, where);
  cost.lookup_cost_per_row = get_or<double>(j, "lookup_cost_per_row", cost.lookup_cost_per_row, where);
  cost.creation_rate = get_or<double>(j, "creation_rate", cost.creation_rate, where);
  cost.noise_sigma = get_or<double>(j, "noise_sigma", cost.noise_sigma, where);
  cost.rng_seed = get_or<std::uint64_t>(j, "seed", cost.rng_seed, where);
  try {
    cost.validate();
  } catch (const std::invalid_argument& e) {
    fail(where, e.what());
  }
  return cost;
}

TuningDefaults parse_tuning(const json& j) {
  TuningDefaults t;
  const std::string where = "tuning";
  t.ucb.alpha.alpha = get_or<double>(j, "alpha", t.ucb.alpha.alpha, where);
  t.ucb.lambda = positive(get_or<double>(j, "lambda", t.ucb.lambda, where), "tuning.lambda");
  const auto schedule = get_or<std::string>(j, "alpha_schedule", "constant", where);
  if (schedule == "constant") {
    t.ucb.alpha.kind = AlphaSchedule::Kind::constant;
  } else if (schedule == "sqrt_log") {
    t.ucb.alpha.kind = AlphaSchedule::Kind::sqrt_log;
  } else {
    fail("tuning.alpha_schedule", "expected \"constant\" or \"sqrt_log\"");
  }
  if (t.ucb.alpha.alpha < 0.0) fail("tuning.alpha", "must be >= 0");
  t.max_key_width = get_or<std::size_t>(j, "max_key_width", t.max_key_width, where);
  if (t.max_key_width == 0) fail("tuning.max_key_width", "must be >= 1");
  t.shift_threshold = get_or<double>(j, "shift_threshold", t.shift_threshold, where);
  t.qoi_window = get_or<std::uint32_t>(j, "qoi_window", t.qoi_window, where);
  if (t.qoi_window == 0) fail("tuning.qoi_window", "must be >= 1");
  if (j.is_object() && j.contains("budget")) {
    const auto& b = j.at("budget");
    if (b.is_number()) {
      t.budget = {positive(b.get<double>(), "tuning.budget"), false};
    } else if (b.is_string()) {
      t.budget = BudgetSpec::parse(b.get<std::string>());
    } else {
      fail("tuning.budget", "expected \"<m>x\" or a byte count");
    }
  }
  const auto criterion = get_or<std::string>(j, "oracle", "best_of", where);
  if (criterion == "best_of") {
    t.criterion = GreedyCriterion::best_of;
  } else if (criterion == "score") {
    t.criterion = GreedyCriterion::score;
  } else if (criterion == "density") {
    t.criterion = GreedyCriterion::density;
  } else {
    fail("tuning.oracle", "expected \"best_of\", \"score\" or \"density\"");
  }
  return t;
}

}  // namespace

BudgetSpec BudgetSpec::parse(std::string_view text) {
  BudgetSpec spec;
  std::string_view number = text;
  spec.multiplier = false;
  if (!number.empty() && (number.back() == 'x' || number.back() == 'X')) {
    spec.multiplier = true;
    number.remove_suffix(1);
  }
  double v = 0.0;
  const auto* end = number.data() + number.size();
  auto [ptr, ec] = std::from_chars(number.data(), end, v);
  if (number.empty() || ec != std::errc() || ptr != end || !(v > 0.0) || !std::isfinite(v)) {
    throw ScenarioError(fmt::format("budget \"{}\": expected \"<m>x\" or a positive byte count",
                                    text));
  }
  spec.value = v;
  return spec;
}

double BudgetSpec::resolve(double data_size) const {
  return multiplier ? value * data_size : value;
}

std::string BudgetSpec::to_string() const {
  return multiplier ? fmt::format("{}x", value) : fmt::format("{}", value);
}

Scenario parse_scenario(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ScenarioError(fmt::format("scenario is not valid JSON: {}", e.what()));
  }
  if (!root.is_object()) throw ScenarioError("scenario must be a JSON object");

  Scenario s;
  s.name = get_or<std::string>(root, "name", "scenario", "scenario");
  parse_tables(require(root, "tables", "scenario"), s.schema);
  s.workload.templates = parse_templates(require(root, "templates", "scenario"), s.schema);
  s.cost = parse_cost(root.value("cost_model", json::object()));

  const json wl = root.value("workload", json::object());
  const auto regime = get_or<std::string>(wl, "regime", "static", "workload");
  if (auto r = parse_regime(regime)) {
    s.regime = *r;
  } else {
    fail("workload.regime", fmt::format("unknown regime \"{}\"", regime));
  }
  s.workload.rounds = get_or<std::size_t>(wl, "rounds", s.workload.rounds, "workload");
  s.workload.groups = get_or<std::size_t>(wl, "groups", s.workload.groups, "workload");
  s.workload.rounds_per_group =
      get_or<std::size_t>(wl, "rounds_per_group", s.workload.rounds_per_group, "workload");
  s.workload.queries_per_round =
      get_or<std::size_t>(wl, "queries_per_round", s.workload.queries_per_round, "workload");
  s.seed = get_or<std::uint64_t>(wl, "seed", s.seed, "workload");
  if (s.regime == Regime::kShifting &&
      (s.workload.groups == 0 || s.workload.rounds_per_group == 0 ||
       s.workload.templates.size() < s.workload.groups)) {
    fail("workload", "shifting regime needs groups >= 1, rounds_per_group >= 1 and at least "
                     "one template per group");
  }

  s.tuning = parse_tuning(root.value("tuning", json::object()));
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScenarioError(fmt::format("cannot open scenario file {}", path.string()));
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return parse_scenario(text.str());
  } catch (const ScenarioError& e) {
    throw ScenarioError(fmt::format("{}: {}", path.string(), e.what()));
  }
}

}  // namespace indextune

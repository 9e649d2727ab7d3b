#include "indextune/harness.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <set>
#include <stdexcept>

#include <fmt/format.h>

#include "indextune/query_store.hpp"
#include "indextune/reward.hpp"

namespace indextune {

TuningOptions tuning_from(const TuningDefaults& defaults) {
  TuningOptions o;
  o.ucb = defaults.ucb;
  o.max_key_width = defaults.max_key_width;
  o.shift_threshold = defaults.shift_threshold;
  o.qoi_window = defaults.qoi_window;
  o.oracle.criterion = defaults.criterion;
  return o;
}

TimeBreakdown ExperimentReport::totals() const {
  TimeBreakdown t;
  for (const auto& r : rounds) {
    t.recommendation += r.c_rec;
    t.creation += r.c_cre;
    t.execution += r.c_exc;
  }
  return t;
}

Environment make_environment(const Scenario& scenario) {
  Environment env;
  env.schema = scenario.schema;
  env.cost = scenario.cost;
  env.workload = generate_workload(scenario.regime, scenario.workload, scenario.seed);
  env.budget = scenario.tuning.budget.resolve(scenario.schema.data_size());
  return env;
}

double expected_round_reward(const Simulator& sim, std::span<const QueryInstance> round,
                             std::span<const IndexArm> config, const std::set<ArmId>& previous) {
  double reward = sim.execution_time(round, {}) - sim.execution_time(round, config);
  for (const auto& arm : config) {
    if (!previous.contains(arm.arm_id)) reward -= sim.creation_time(arm);
  }
  return reward;
}

namespace {

std::set<ArmId> ids_of(std::span<const IndexArm> arms) {
  std::set<ArmId> ids;
  for (const auto& a : arms) ids.insert(a.arm_id);
  return ids;
}

std::vector<ArmId> used_this_round(const RoundOutcome& outcome) {
  std::set<ArmId> used;
  for (const auto& q : outcome.queries) used.insert(q.used_indices.begin(), q.used_indices.end());
  return {used.begin(), used.end()};
}

}  // namespace

ExperimentReport run_experiment(const Environment& env, const TuningOptions& options) {
  ExperimentReport report;
  report.method = "MAB";
  Simulator sim(env.schema, env.cost);
  QueryStore store(options.qoi_window);
  LinearModelState state(context_dimension(env.schema), options.ucb.lambda);
  ScanReferenceCache scans;
  UsageTracker usage(options.usage_decay);
  const double db_size = env.schema.data_size();

  std::vector<IndexArm> current;  // s_{t-1}
  for (std::size_t i = 0; i < env.workload.size(); ++i) {
    const auto round = static_cast<std::uint32_t>(i + 1);
    RoundRecord rec;
    rec.round = round;

    if (round > 1) {
      const bool had_history = !store.empty();
      rec.shift_intensity = store.ingest(round - 1, env.workload[i - 1]);
      if (had_history && rec.shift_intensity >= options.shift_threshold) {
        state = forget(std::move(state));
        rec.forgot = true;
        report.forget_rounds.push_back(round);
      }
    }

    const auto started = std::chrono::steady_clock::now();
    const auto qoi = round > 1 ? store.queries_of_interest(round - 1)
                               : std::vector<QueryTemplateInfo>{};
    const auto arms = generate_arms(env.schema, qoi, options.max_key_width);
    rec.candidate_arms = arms.size();

    const auto materialised = ids_of(current);
    ContextInputs inputs;
    inputs.schema = &env.schema;
    inputs.templates = qoi;
    for (const auto& t : qoi) {
      for (const auto& on_table : t.tables) {
        inputs.template_predicates.insert(on_table.predicates.begin(), on_table.predicates.end());
      }
    }
    inputs.materialised = &materialised;
    inputs.usage_history = &usage.history();
    inputs.db_size = db_size;

    std::map<ArmId, Eigen::VectorXd> contexts;
    std::vector<SelectionCandidate> candidates;
    candidates.reserve(arms.size());
    if (!arms.empty()) {
      const UcbScorer scorer(state, options.ucb);
      for (const auto& arm : arms) {
        auto ctx = build_context(arm, inputs).values;
        SelectionCandidate c;
        c.arm_id = arm.arm_id;
        c.score = scorer.score(ctx, arm.arm_id).ucb;
        c.memory_cost = arm.estimated_size;
        c.table = arm.table;
        c.key_columns = arm.key_columns;
        c.source_templates.assign(arm.source_templates.begin(), arm.source_templates.end());
        for (const auto& t : qoi) {
          if (!arm.source_templates.contains(t.template_id)) continue;
          const auto* on_table = t.on_table(arm.table);
          if (on_table == nullptr) continue;
          TableAccessSpec probe;
          probe.table = arm.table;
          for (ColumnId p : on_table->predicates) probe.predicates.push_back({p, 1.0});
          probe.payload = on_table->payload;
          if (is_covering(arm, probe)) c.covering_for.push_back(t.template_id);
        }
        contexts.emplace(arm.arm_id, std::move(ctx));
        candidates.push_back(std::move(c));
      }
    }
    const auto chosen = select_super_arm(candidates, env.budget, options.oracle);
    const auto finished = std::chrono::steady_clock::now();
    rec.c_rec = options.timing == Timing::wall
                    ? std::chrono::duration<double>(finished - started).count()
                    : 0.0;

    std::vector<IndexArm> config;
    for (const auto& arm : arms) {
      if (chosen.contains(arm.arm_id)) config.push_back(arm);
    }

    const auto built = sim.materialise(config, materialised, env.budget);
    auto outcome = sim.execute(env.workload[i], config);
    outcome.creation_times = built.creation_times;

    std::vector<Observation> observations;
    observations.reserve(config.size());
    for (const auto& arm : config) {
      const double r = arm_reward(outcome, arm.arm_id, arm.table, &scans);
      rec.reward += r;
      observations.push_back({contexts.at(arm.arm_id), r});
    }
    state = update(std::move(state), observations);
    scans.record(outcome);
    const auto used = used_this_round(outcome);
    usage.observe_round({used.begin(), used.end()});

    rec.c_cre = outcome.creation_time();
    rec.c_exc = outcome.execution_time();
    rec.expected_reward = expected_round_reward(sim, env.workload[i], config, materialised);
    rec.expected_exc = sim.execution_time(env.workload[i], config);
    rec.configuration = outcome.configuration;
    report.rounds.push_back(std::move(rec));
    current = std::move(config);
  }
  return report;
}

ExperimentReport run_fixed_configuration(const Environment& env, std::span<const IndexArm> config,
                                         std::string method) {
  ExperimentReport report;
  report.method = std::move(method);
  Simulator sim(env.schema, env.cost);
  ScanReferenceCache scans;
  std::set<ArmId> current;
  for (std::size_t i = 0; i < env.workload.size(); ++i) {
    RoundRecord rec;
    rec.round = static_cast<std::uint32_t>(i + 1);
    const auto built = sim.materialise(config, current, env.budget);
    auto outcome = sim.execute(env.workload[i], config);
    outcome.creation_times = built.creation_times;
    rec.c_cre = outcome.creation_time();
    rec.c_exc = outcome.execution_time();
    rec.expected_reward = expected_round_reward(sim, env.workload[i], config, current);
    rec.expected_exc = sim.execution_time(env.workload[i], config);
    rec.configuration = outcome.configuration;
    for (const auto& arm : config) {
      rec.reward += arm_reward(outcome, arm.arm_id, arm.table, &scans);
    }
    scans.record(outcome);
    report.rounds.push_back(std::move(rec));
    current = ids_of(config);
  }
  return report;
}

ExperimentReport run_baseline_noindex(const Environment& env) {
  return run_fixed_configuration(env, {}, "NoIndex");
}

std::vector<QueryTemplateInfo> workload_templates(std::span<const RoundWorkload> rounds) {
  std::vector<QueryTemplateInfo> out;
  std::set<TemplateId> seen;
  for (const auto& round : rounds) {
    for (const auto& q : round) {
      auto info = describe_template(q);
      if (seen.insert(info.template_id).second) out.push_back(std::move(info));
    }
  }
  return out;
}

std::vector<IndexArm> full_arm_pool(const Schema& schema, std::span<const RoundWorkload> rounds,
                                    std::size_t max_key_width) {
  const auto templates = workload_templates(rounds);
  return generate_arms(schema, templates, max_key_width);
}

namespace {

// Accesses that share the same set of applicable arms. Their summed best-path
// time depends only on which of those arms are present, so it is tabulated
// once per subset of the (few) applicable arms.
struct AccessGroup {
  std::vector<std::size_t> arms;  // pool indices
  std::vector<double> by_mask;    // 2^arms.size() entries, empty if too wide
  struct Access {
    double scan;
    std::vector<double> via;  // per entry of `arms`, +inf if not applicable
  };
  std::vector<Access> accesses;
};

constexpr std::size_t kTabulateLimit = 16;

}  // namespace

RegretBaseline brute_force_optimum(const Schema& schema, const CostModel& cost,
                                   std::span<const RoundWorkload> rounds,
                                   std::span<const IndexArm> pool, double budget,
                                   std::size_t max_arms) {
  if (pool.size() > max_arms) {
    throw std::length_error(
        fmt::format("exhaustive search refused: {} candidate arms exceeds the limit of {}",
                    pool.size(), max_arms));
  }
  if (!(budget >= 0.0)) throw std::invalid_argument("budget must be >= 0");
  CostModel quiet = cost;
  quiet.noise_sigma = 0.0;
  const Simulator sim(schema, quiet);
  const std::size_t n = pool.size();

  std::map<std::vector<std::size_t>, AccessGroup> groups;
  double constant = 0.0;  // accesses no arm can serve
  for (const auto& round : rounds) {
    for (const auto& query : round) {
      for (const auto& access : query.accesses) {
        const double scan = sim.full_scan_time(access);
        std::vector<std::size_t> applicable;
        std::vector<double> via;
        for (std::size_t k = 0; k < n; ++k) {
          if (auto t = sim.index_access_time(access, pool[k]); t && *t < scan) {
            applicable.push_back(k);
            via.push_back(*t);
          }
        }
        if (applicable.empty()) {
          constant += scan;
          continue;
        }
        auto& g = groups[applicable];
        g.arms = applicable;
        g.accesses.push_back({scan, std::move(via)});
      }
    }
  }

  std::vector<AccessGroup> flat;
  for (auto& [key, g] : groups) {
    if (g.arms.size() <= kTabulateLimit) {
      const std::size_t masks = std::size_t{1} << g.arms.size();
      g.by_mask.assign(masks, 0.0);
      std::vector<double> best(masks);
      for (const auto& a : g.accesses) {
        best[0] = a.scan;
        for (std::size_t m = 1; m < masks; ++m) {
          const auto low = static_cast<std::size_t>(__builtin_ctzll(m));
          best[m] = std::min(best[m & (m - 1)], a.via[low]);
          g.by_mask[m] += best[m];
        }
        g.by_mask[0] += a.scan;
      }
      g.accesses.clear();
    }
    flat.push_back(std::move(g));
  }

  std::vector<double> creation(n);
  for (std::size_t k = 0; k < n; ++k) creation[k] = sim.creation_time(pool[k]);

  auto evaluate = [&](std::uint64_t chosen) {
    double total = constant;
    for (const auto& g : flat) {
      if (!g.by_mask.empty()) {
        std::size_t m = 0;
        for (std::size_t b = 0; b < g.arms.size(); ++b) {
          if (chosen >> g.arms[b] & 1u) m |= std::size_t{1} << b;
        }
        total += g.by_mask[m];
      } else {
        for (const auto& a : g.accesses) {
          double best = a.scan;
          for (std::size_t b = 0; b < g.arms.size(); ++b) {
            if (chosen >> g.arms[b] & 1u) best = std::min(best, a.via[b]);
          }
          total += best;
        }
      }
    }
    return total;
  };

  std::uint64_t best_mask = 0;
  double best_exec = evaluate(0);
  double best_objective = best_exec;
  std::uint64_t evaluated = 1;

  // Depth-first over include/exclude; only budget-feasible subsets are leaves.
  struct Frame {
    std::size_t next;
    std::uint64_t mask;
    double size;
    double created;
  };
  std::vector<Frame> stack{{0, 0, 0.0, 0.0}};
  while (!stack.empty()) {
    const Frame f = stack.back();
    stack.pop_back();
    for (std::size_t k = f.next; k < n; ++k) {
      const double size = f.size + pool[k].estimated_size;
      if (size > budget) continue;
      const std::uint64_t mask = f.mask | (std::uint64_t{1} << k);
      const double created = f.created + creation[k];
      const double exec = evaluate(mask);
      ++evaluated;
      if (exec + created < best_objective) {
        best_objective = exec + created;
        best_exec = exec;
        best_mask = mask;
      }
      stack.push_back({k + 1, mask, size, created});
    }
  }

  RegretBaseline out;
  out.subsets_evaluated = evaluated;
  for (std::size_t k = 0; k < n; ++k) {
    if (best_mask >> k & 1u) {
      out.configuration.push_back(pool[k]);
      out.super_arm.arm_ids.push_back(pool[k].arm_id);
      out.super_arm.total_cost += pool[k].estimated_size;
      out.creation_time += creation[k];
    }
  }
  std::sort(out.configuration.begin(), out.configuration.end(),
            [](const IndexArm& a, const IndexArm& b) { return a.arm_id < b.arm_id; });
  std::sort(out.super_arm.arm_ids.begin(), out.super_arm.arm_ids.end());
  out.execution_time = best_exec;

  const auto fixed = ids_of(out.configuration);
  const std::set<ArmId> none;
  for (std::size_t t = 0; t < rounds.size(); ++t) {
    out.round_reward.push_back(
        expected_round_reward(sim, rounds[t], out.configuration, t == 0 ? none : fixed));
    out.round_execution.push_back(sim.execution_time(rounds[t], out.configuration));
  }
  return out;
}

RegretBaseline brute_force_optimum(const Environment& env, std::size_t max_key_width,
                                   std::size_t max_arms) {
  const auto pool = full_arm_pool(env.schema, env.workload, max_key_width);
  return brute_force_optimum(env.schema, env.cost, env.workload, pool, env.budget, max_arms);
}

RegretSeries regret_series(const ExperimentReport& report, const RegretBaseline& baseline,
                           double alpha) {
  if (report.rounds.size() != baseline.round_reward.size()) {
    throw std::invalid_argument(fmt::format("report has {} rounds, baseline has {}",
                                            report.rounds.size(),
                                            baseline.round_reward.size()));
  }
  RegretSeries s;
  double running = 0.0;
  for (std::size_t t = 0; t < report.rounds.size(); ++t) {
    const double r = alpha * baseline.round_reward[t] - report.rounds[t].expected_reward;
    running += r;
    s.instantaneous.push_back(r);
    s.cumulative.push_back(running);
  }
  return s;
}

void attach_regret(ExperimentReport& report, const RegretBaseline& baseline, double alpha) {
  const auto s = regret_series(report, baseline, alpha);
  for (std::size_t t = 0; t < report.rounds.size(); ++t) {
    report.rounds[t].regret = s.instantaneous[t];
  }
}

}  // namespace indextune

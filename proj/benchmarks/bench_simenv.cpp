#include <benchmark/benchmark.h>

#include "indextune/harness.hpp"
#include "indextune/scenario.hpp"

using namespace indextune;

namespace {

Environment static_env(std::size_t rounds) {
  auto s = load_scenario(std::string(INDEXTUNE_SCENARIO_DIR) + "/static_small.json");
  s.workload.rounds = rounds;
  return make_environment(s);
}

void BM_ExecuteRound(benchmark::State& state) {
  const auto env = static_env(1);
  const auto pool = full_arm_pool(env.schema, env.workload, 3);
  Simulator sim(env.schema, env.cost);
  for (auto _ : state) benchmark::DoNotOptimize(sim.execute(env.workload[0], pool));
}
BENCHMARK(BM_ExecuteRound);

void BM_TuningLoop(benchmark::State& state) {
  const auto env = static_env(static_cast<std::size_t>(state.range(0)));
  TuningOptions o;
  o.timing = Timing::none;
  for (auto _ : state) benchmark::DoNotOptimize(run_experiment(env, o));
}
BENCHMARK(BM_TuningLoop)->Arg(25)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_BruteForce(benchmark::State& state) {
  const auto env = static_env(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_optimum(env, 3));
}
BENCHMARK(BM_BruteForce)->Arg(25)->Unit(benchmark::kMillisecond);

}  // namespace

#include <benchmark/benchmark.h>

#include "indextune/oracle.hpp"
#include "indextune/random.hpp"

using namespace indextune;

namespace {

std::vector<SelectionCandidate> candidates(std::size_t n, Rng& rng) {
  std::vector<SelectionCandidate> out;
  for (std::size_t i = 0; i < n; ++i) {
    SelectionCandidate c;
    c.arm_id = "arm" + std::to_string(i);
    c.table = static_cast<TableId>(rng.below(8));
    const std::size_t width = 1 + rng.below(3);
    for (std::size_t k = 0; k < width; ++k) c.key_columns.push_back(static_cast<ColumnId>(rng.below(12)));
    c.score = rng.uniform(-0.1, 1.0);
    c.memory_cost = rng.uniform(1.0, 100.0);
    c.source_templates = {"q" + std::to_string(rng.below(n / 4 + 1))};
    out.push_back(std::move(c));
  }
  return out;
}

void BM_SelectSuperArm(benchmark::State& state) {
  Rng rng(3);
  const auto pool = candidates(static_cast<std::size_t>(state.range(0)), rng);
  const double budget = 25.0 * static_cast<double>(pool.size()) / 4.0;
  for (auto _ : state) benchmark::DoNotOptimize(select_super_arm(pool, budget));
}
BENCHMARK(BM_SelectSuperArm)->Arg(20)->Arg(100)->Arg(500);

}  // namespace

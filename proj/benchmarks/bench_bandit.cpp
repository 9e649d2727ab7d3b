#include <benchmark/benchmark.h>

#include "indextune/bandit_core.hpp"
#include "indextune/random.hpp"

using namespace indextune;

namespace {

LinearModelState trained(std::size_t dim, Rng& rng) {
  LinearModelState s(dim, 1.0);
  for (int round = 0; round < 50; ++round) {
    std::vector<Observation> obs;
    for (int i = 0; i < 8; ++i) {
      obs.push_back({Eigen::VectorXd::NullaryExpr(static_cast<Eigen::Index>(dim),
                                                  [&] { return rng.uniform(); }),
                     rng.uniform(-1.0, 1.0)});
    }
    s = update(std::move(s), obs);
  }
  return s;
}

void BM_ScoreArmPool(benchmark::State& state) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  Rng rng(1);
  const auto model = trained(dim, rng);
  std::vector<Eigen::VectorXd> pool;
  for (int i = 0; i < 200; ++i) {
    pool.push_back(Eigen::VectorXd::NullaryExpr(static_cast<Eigen::Index>(dim),
                                                [&] { return rng.uniform(); }));
  }
  for (auto _ : state) {
    const UcbScorer scorer(model, {});
    double total = 0.0;
    for (const auto& x : pool) total += scorer.score(x).ucb;
    benchmark::DoNotOptimize(total);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(pool.size()));
}
BENCHMARK(BM_ScoreArmPool)->Arg(16)->Arg(64)->Arg(256);

void BM_UpdateRound(benchmark::State& state) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  Rng rng(2);
  std::vector<Observation> obs;
  for (int i = 0; i < 10; ++i) {
    obs.push_back({Eigen::VectorXd::NullaryExpr(static_cast<Eigen::Index>(dim),
                                                [&] { return rng.uniform(); }),
                   rng.uniform()});
  }
  LinearModelState s(dim, 1.0);
  for (auto _ : state) {
    s.absorb(obs);
    benchmark::ClobberMemory();
  }
}
BENCHMARK(BM_UpdateRound)->Arg(16)->Arg(64)->Arg(256);

}  // namespace

#include <benchmark/benchmark.h>

#include "random_dag.hpp"
#include "tanglesim/engine.hpp"
#include "tanglesim/inbox.hpp"

namespace ts = tanglesim;

namespace {

// Weight propagation for a whole DAG, scheduling every block once.
void BM_OnScheduled(benchmark::State& state, ts::WeightMode mode) {
  ts::Rng rng(1);
  const auto dag = ts::testing::make_random_dag(rng, static_cast<std::size_t>(state.range(0)), 2, 40, 0.0);
  for (auto _ : state) {
    state.PauseTiming();
    ts::LedgerView view(mode);
    ts::testing::attach_all(dag, view);
    state.ResumeTiming();
    for (const ts::BlockId id : dag.scheduled) {
      view.on_scheduled(id, dag.blocks[id.value]->issue_time + 5.0, 25);
    }
    benchmark::DoNotOptimize(view.scheduled_count());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(dag.scheduled.size()));
}
BENCHMARK_CAPTURE(BM_OnScheduled, exact, ts::WeightMode::Exact)->Arg(1000)->Arg(4000);
BENCHMARK_CAPTURE(BM_OnScheduled, saturate, ts::WeightMode::SaturateConfirmed)->Arg(1000)->Arg(4000);

// Past-cone confirmation search from the newest blocks.
void BM_PctSearch(benchmark::State& state, ts::ConeSearch search) {
  ts::Rng rng(2);
  const auto dag = ts::testing::make_random_dag(rng, 4000, 2, 40, 0.0);
  ts::LedgerView view(ts::WeightMode::SaturateConfirmed);
  ts::testing::attach_all(dag, view);
  for (const ts::BlockId id : dag.scheduled) {
    view.on_scheduled(id, dag.blocks[id.value]->issue_time + 5.0, 25);
  }
  const double t = dag.blocks.back()->issue_time + 5.0;
  const double horizon = static_cast<double>(state.range(0));
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& b = dag.blocks[dag.blocks.size() - 1 - (i++ % 200)];
    benchmark::DoNotOptimize(view.most_recent_confirmed_in_past_cone(b->id, t, horizon, search));
  }
}
BENCHMARK_CAPTURE(BM_PctSearch, exhaustive, ts::ConeSearch::Exhaustive)->Arg(80)->Arg(400);
BENCHMARK_CAPTURE(BM_PctSearch, prune, ts::ConeSearch::PruneAtConfirmed)->Arg(80)->Arg(400);

// Inbox enqueue with drop-head plus DRR service over 20 issuers.
void BM_InboxDrr(benchmark::State& state) {
  const auto rep = ts::sample_reputations(20, 0.9);
  ts::Inbox inbox(20, 200);
  ts::DrrScheduler drr(rep);
  ts::Rng rng(3);
  std::uint64_t id = 1;
  for (auto _ : state) {
    const auto issuer = static_cast<std::uint32_t>(rng.below(20));
    inbox.enqueue(rep, {ts::make_block(ts::BlockId{id++}, ts::NodeId{issuer}, 1.0, {ts::BlockId{0}}),
                        0.0, std::nullopt});
    if (id % 2 == 0) benchmark::DoNotOptimize(drr.next(inbox));
  }
}
BENCHMARK(BM_InboxDrr);

// A short end-to-end run of each preset.
void BM_Run(benchmark::State& state, const char* name) {
  ts::ScenarioConfig c = ts::preset(name);
  c.duration_s = static_cast<double>(state.range(0));
  c.runs = 1;
  for (auto _ : state) {
    const auto r = ts::run(c);
    benchmark::DoNotOptimize(r.events_processed);
    state.counters["events"] = static_cast<double>(r.events_processed);
  }
}
BENCHMARK_CAPTURE(BM_Run, honest, "honest_baseline")->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Run, a1, "a1_spammer")->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Run, a2, "a2_multirate")->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();

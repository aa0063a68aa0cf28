#include <gtest/gtest.h>

#include "random_dag.hpp"
#include "tanglesim/dag.hpp"

namespace tanglesim {
namespace {

BlockRef blk(std::uint64_t id, SimTime t, std::vector<BlockId> parents) {
  return make_block(BlockId{id}, NodeId{0}, t, std::move(parents));
}

TEST(LedgerView, GenesisIntoEmptyViewIsSolid) {
  LedgerView v;
  const auto out = v.attach(blk(0, 0.0, {}));
  EXPECT_EQ(out.result, AttachResult::Solid);
  EXPECT_EQ(v.genesis_id(), BlockId{0});
  EXPECT_EQ(v.solid_count(), 1u);
}

TEST(LedgerView, MissingParentPendsUntilItArrives) {
  LedgerView v;
  v.bootstrap_genesis(blk(0, 0.0, {}));
  const auto child = v.attach(blk(2, 2.0, {BlockId{1}}));
  EXPECT_EQ(child.result, AttachResult::Pending);
  EXPECT_EQ(child.missing, std::vector<BlockId>{BlockId{1}});
  EXPECT_TRUE(v.is_pending(BlockId{2}));

  const auto parent = v.attach(blk(1, 1.0, {BlockId{0}}));
  EXPECT_EQ(parent.result, AttachResult::Solid);
  EXPECT_EQ(parent.solidified, (std::vector<BlockId>{BlockId{1}, BlockId{2}}));
  EXPECT_TRUE(v.is_solid(BlockId{2}));
  EXPECT_EQ(v.pending_count(), 0u);
}

TEST(LedgerView, SecondAttachIsDuplicate) {
  LedgerView v;
  v.bootstrap_genesis(blk(0, 0.0, {}));
  v.attach(blk(1, 1.0, {BlockId{0}}));
  EXPECT_EQ(v.attach(blk(1, 1.0, {BlockId{0}})).result, AttachResult::Duplicate);
  EXPECT_EQ(v.solid_count(), 2u);
}

TEST(LedgerView, MalformedBlocksLeaveViewUnchanged) {
  LedgerView v;
  v.bootstrap_genesis(blk(0, 0.0, {}));
  EXPECT_THROW(v.attach(blk(1, 1.0, {BlockId{1}})), MalformedBlock);
  EXPECT_THROW(v.attach(blk(2, 1.0, {BlockId{0}, BlockId{0}})), MalformedBlock);
  EXPECT_THROW(v.attach(blk(3, 0.0, {BlockId{0}})), MalformedBlock);
  EXPECT_THROW(v.attach(blk(4, 1.0, {})), MalformedBlock);  // second parentless block
  EXPECT_EQ(v.solid_count(), 1u);
  EXPECT_EQ(v.pending_count(), 0u);
}

TEST(LedgerView, ChainWeights) {
  LedgerView v;
  v.attach(blk(0, 0.0, {}));
  v.attach(blk(1, 1.0, {BlockId{0}}));
  v.attach(blk(2, 2.0, {BlockId{1}}));
  EXPECT_TRUE(v.on_scheduled(BlockId{0}, 0.0, 3).empty());
  EXPECT_TRUE(v.on_scheduled(BlockId{1}, 1.0, 3).empty());
  EXPECT_EQ(v.on_scheduled(BlockId{2}, 2.0, 3), std::vector<BlockId>{BlockId{0}});
  EXPECT_EQ(v.find(BlockId{0})->cumulative_weight, 3u);
  EXPECT_EQ(v.find(BlockId{1})->cumulative_weight, 2u);
  EXPECT_EQ(v.find(BlockId{2})->cumulative_weight, 1u);
  EXPECT_EQ(v.find(BlockId{0})->confirm_time, 2.0);
}

TEST(LedgerView, FreshTipHasWeightOne) {
  LedgerView v;
  v.bootstrap_genesis(blk(0, 0.0, {}));
  v.attach(blk(1, 1.0, {BlockId{0}}));
  v.on_scheduled(BlockId{1}, 1.0, 25);
  EXPECT_EQ(v.find(BlockId{1})->cumulative_weight, 1u);
  EXPECT_EQ(v.recount_cw(BlockId{1}), 1u);
}

TEST(LedgerView, SchedulingOutOfOrderIsAPipelineError) {
  LedgerView v;
  v.bootstrap_genesis(blk(0, 0.0, {}));
  v.attach(blk(2, 2.0, {BlockId{1}}));
  EXPECT_THROW(v.on_scheduled(BlockId{2}, 3.0, 25), PipelineError);
  EXPECT_THROW(v.on_scheduled(BlockId{9}, 3.0, 25), PipelineError);
  EXPECT_THROW((void)v.pct(BlockId{9}, 3.0, 80.0), PipelineError);
}

TEST(LedgerView, DiamondRecount) {
  LedgerView v;
  v.attach(blk(0, 0.0, {}));
  v.attach(blk(1, 1.0, {BlockId{0}}));
  v.attach(blk(2, 1.5, {BlockId{0}}));
  v.attach(blk(3, 2.0, {BlockId{1}, BlockId{2}}));
  for (std::uint64_t i = 0; i < 4; ++i) v.on_scheduled(BlockId{i}, static_cast<SimTime>(i), 25);
  EXPECT_EQ(v.recount_cw(BlockId{0}), 4u);
  EXPECT_EQ(v.find(BlockId{0})->cumulative_weight, 4u);
  EXPECT_EQ(v.recount_cw(BlockId{3}), 1u);
}

TEST(LedgerView, GenesisRecountEqualsScheduledCount) {
  Rng rng(3);
  const auto dag = testing::make_random_dag(rng, 60);
  LedgerView v(WeightMode::Exact);
  testing::attach_all(dag, v);
  for (const BlockId id : dag.scheduled) v.on_scheduled(id, 100.0, 1000);
  EXPECT_EQ(v.recount_cw(BlockId{0}), v.scheduled_count());
}

TEST(LedgerView, IncrementalWeightMatchesRecountOnRandomDags) {
  Rng rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const auto dag = testing::make_random_dag(rng, 200, 3);
    LedgerView v(WeightMode::Exact);
    testing::attach_all(dag, v);
    for (const BlockId id : dag.scheduled) v.on_scheduled(id, 300.0, 25);
    for (const auto& b : dag.blocks) {
      if (!v.is_scheduled(b->id)) continue;
      ASSERT_EQ(v.find(b->id)->cumulative_weight, v.recount_cw(b->id)) << to_string(b->id);
    }
  }
}

TEST(LedgerView, SaturatedAndExactWeightsConfirmAtTheSameTimes) {
  Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const auto dag = testing::make_random_dag(rng, 300, 2, 8);
    LedgerView exact(WeightMode::Exact);
    LedgerView saturate(WeightMode::SaturateConfirmed);
    testing::attach_all(dag, exact);
    testing::attach_all(dag, saturate);
    SimTime t = 1.0;
    for (const BlockId id : dag.scheduled) {
      auto a = exact.on_scheduled(id, t, 10);
      auto b = saturate.on_scheduled(id, t, 10);
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      ASSERT_EQ(a, b);
      t += 1.0;
    }
    for (const auto& b : dag.blocks) {
      ASSERT_EQ(exact.find(b->id)->confirm_time, saturate.find(b->id)->confirm_time);
    }
  }
}

TEST(LedgerView, ParentConfirmedWithinHorizon) {
  LedgerView v;
  v.attach(blk(0, 0.0, {}));
  v.attach(blk(1, 30.0, {BlockId{0}}));
  v.attach(blk(2, 90.0, {BlockId{1}}));
  v.mark_confirmed(BlockId{1}, 80.0);
  EXPECT_EQ(v.most_recent_confirmed_in_past_cone(BlockId{2}, 100.0, 80.0), 80.0);
}

TEST(LedgerView, ConfirmedAncestorsOutsideHorizonAreNotFound) {
  LedgerView v;
  v.attach(blk(0, 0.0, {}));
  v.attach(blk(1, 5.0, {BlockId{0}}));
  v.attach(blk(2, 95.0, {BlockId{1}}));
  v.mark_confirmed(BlockId{0}, 0.0);
  v.mark_confirmed(BlockId{1}, 50.0);
  EXPECT_EQ(v.most_recent_confirmed_in_past_cone(BlockId{2}, 100.0, 80.0), std::nullopt);
  EXPECT_EQ(v.most_recent_confirmed_in_past_cone(BlockId{2}, 100.0, kInfiniteHorizon), 50.0);
}

TEST(LedgerView, PctExamples) {
  LedgerView v;
  v.bootstrap_genesis(blk(0, 0.0, {}));
  v.attach(blk(1, 70.0, {BlockId{0}}));
  v.attach(blk(2, 90.0, {BlockId{1}}));
  v.mark_confirmed(BlockId{1}, 80.0);
  v.on_scheduled(BlockId{1}, 75.0, 25);
  v.on_scheduled(BlockId{2}, 100.0, 25);
  EXPECT_EQ(v.pct(BlockId{2}, 100.0, 80.0), 20.0);
  EXPECT_EQ(v.pct(BlockId{2}, 80.0, 80.0), 0.0);
  EXPECT_EQ(v.pct(BlockId{2}, 79.0, 80.0), 0.0);  // clamped
  EXPECT_EQ(v.pct(BlockId{2}, 200.0, 80.0), std::nullopt);
}

TEST(LedgerView, PrunedSearchAgreesWithExhaustiveSearch) {
  Rng rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const auto dag = testing::make_random_dag(rng, 300, 2, 10);
    LedgerView v(WeightMode::SaturateConfirmed);
    testing::attach_all(dag, v);
    SimTime t = 1.0;
    for (const BlockId id : dag.scheduled) {
      v.on_scheduled(id, t, 8);
      t += 1.0;
    }
    for (const auto& b : dag.blocks) {
      for (const SimTime horizon : {20.0, 80.0, kInfiniteHorizon}) {
        const SimTime now = b->issue_time + 10.0;
        ASSERT_EQ(v.most_recent_confirmed_in_past_cone(b->id, now, horizon, ConeSearch::Exhaustive),
                  v.most_recent_confirmed_in_past_cone(b->id, now, horizon,
                                                       ConeSearch::PruneAtConfirmed));
      }
    }
  }
}

TEST(LedgerView, HorizonSearchMatchesFullScan) {
  Rng rng(23);
  for (int trial = 0; trial < 5; ++trial) {
    const auto dag = testing::make_random_dag(rng, 300);
    LedgerView v;
    testing::attach_all(dag, v);
    for (const auto& b : dag.blocks) {
      if (rng.uniform01() < 0.4) v.mark_confirmed(b->id, rng.uniform(0.0, 400.0));
    }
    for (const auto& b : dag.blocks) {
      const SimTime now = b->issue_time + 5.0;
      ASSERT_EQ(v.most_recent_confirmed_in_past_cone(b->id, now, 40.0),
                testing::exhaustive_latest_confirmed(v, b->id, now - 40.0));
    }
  }
}

TEST(LedgerView, MarkConfirmedKeepsTheFirstTime) {
  LedgerView v;
  v.bootstrap_genesis(blk(0, 0.0, {}));
  v.mark_confirmed(BlockId{0}, 5.0);
  EXPECT_EQ(v.find(BlockId{0})->confirm_time, 0.0);
}

}  // namespace
}  // namespace tanglesim

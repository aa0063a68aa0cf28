#include <gtest/gtest.h>

#include <map>

#include "tanglesim/tip_pool.hpp"

namespace tanglesim {
namespace {

BlockRef blk(std::uint64_t id, SimTime t, std::vector<BlockId> parents) {
  return make_block(BlockId{id}, NodeId{0}, t, std::move(parents));
}

// Genesis plus one block confirmed at t=80, the parent of whatever the test
// schedules next.
struct Fixture {
  LedgerView view;
  TipPool pool;

  explicit Fixture(TipPoolParams p = {}) : pool(p) {
    view.bootstrap_genesis(blk(0, 0.0, {}));
    pool.seed(BlockId{0});
    view.attach(blk(1, 70.0, {BlockId{0}}));
    view.on_scheduled(BlockId{1}, 71.0, 1000);
    view.mark_confirmed(BlockId{1}, 80.0);
  }

  Admission schedule_child(std::uint64_t id, SimTime issued, SimTime at) {
    view.attach(blk(id, issued, {BlockId{1}}));
    view.on_scheduled(BlockId{id}, at, 1000);
    return pool.admit(view, BlockId{id}, at);
  }
};

TEST(TipPool, AdmitsWhenPctBelowThreshold) {
  Fixture f;
  EXPECT_EQ(f.schedule_child(2, 95.0, 100.0), Admission::Admitted);
  EXPECT_TRUE(f.pool.contains(BlockId{2}));
}

TEST(TipPool, RejectsWhenPctAtOrAboveThreshold) {
  Fixture f;
  EXPECT_EQ(f.schedule_child(2, 115.0, 120.0), Admission::RejectedPCT);
  EXPECT_FALSE(f.pool.contains(BlockId{2}));
  EXPECT_EQ(f.pool.tip_count(), 1u);
  Fixture g;
  EXPECT_EQ(g.schedule_child(2, 100.0, 105.0), Admission::RejectedPCT);  // exactly 25
}

TEST(TipPool, RejectsWithoutConfirmedAncestorAfterBootstrap) {
  Fixture f;
  EXPECT_EQ(f.schedule_child(2, 175.0, 180.0), Admission::RejectedNoConfirmedAncestor);
}

TEST(TipPool, DisabledFilterAdmitsEverything) {
  TipPoolParams p;
  p.pct_enabled = false;
  Fixture f(p);
  EXPECT_EQ(f.schedule_child(2, 175.0, 180.0), Admission::Admitted);
}

TEST(TipPool, BootstrapWindowAdmitsBlocksBeforeAnythingConfirms) {
  LedgerView view;
  view.attach(blk(0, 0.0, {}));
  view.on_scheduled(BlockId{0}, 0.0, 1000);
  TipPool pool;
  pool.seed(BlockId{0});
  view.attach(blk(1, 1.0, {BlockId{0}}));
  view.on_scheduled(BlockId{1}, 2.0, 1000);
  EXPECT_EQ(pool.admit(view, BlockId{1}, 2.0), Admission::Admitted);
}

TEST(TipPool, AdmitRequiresScheduledBlock) {
  Fixture f;
  f.view.attach(blk(2, 90.0, {BlockId{1}}));
  EXPECT_THROW(f.pool.admit(f.view, BlockId{2}, 90.0), PipelineError);
}

TEST(TipPool, CountsFollowParentRemoval) {
  LedgerView view;
  view.bootstrap_genesis(blk(0, 0.0, {}));
  TipPool pool;
  pool.seed(BlockId{0});
  EXPECT_EQ(pool.tip_count(), 1u);
  view.attach(blk(1, 1.0, {BlockId{0}}));
  view.on_scheduled(BlockId{1}, 1.0, 25);
  pool.admit(view, BlockId{1}, 1.0);
  EXPECT_EQ(pool.tips(), std::vector<BlockId>{BlockId{1}});
  view.attach(blk(2, 1.5, {BlockId{0}}));
  view.on_scheduled(BlockId{2}, 2.0, 25);
  pool.admit(view, BlockId{2}, 2.0);
  EXPECT_EQ(pool.tip_count(), 2u);
}

TEST(TipPool, BlockWithAdmittedChildIsNotInserted) {
  LedgerView view;
  view.bootstrap_genesis(blk(0, 0.0, {}));
  TipPool pool;
  pool.seed(BlockId{0});
  view.attach(blk(1, 1.0, {BlockId{0}}));
  view.attach(blk(2, 2.0, {BlockId{1}}));
  view.on_scheduled(BlockId{2}, 3.0, 25);
  pool.admit(view, BlockId{2}, 3.0);
  view.on_scheduled(BlockId{1}, 4.0, 25);
  pool.admit(view, BlockId{1}, 4.0);
  EXPECT_EQ(pool.tips(), std::vector<BlockId>{BlockId{2}});
}

TEST(TipPool, SelectionFromSingleTip) {
  TipPool pool;
  pool.seed(BlockId{0});
  Rng rng(1);
  EXPECT_EQ(pool.select_tips(2, rng), std::vector<BlockId>{BlockId{0}});
}

TEST(TipPool, SelectionOnEmptyPoolThrows) {
  TipPool pool;
  Rng rng(1);
  EXPECT_THROW((void)pool.select_tips(2, rng), PipelineError);
}

// Pool of ten tips around genesis.
TipPool ten_tips(LedgerView& view) {
  TipPoolParams p;
  p.pct_enabled = false;
  TipPool pool(p);
  view.bootstrap_genesis(blk(0, 0.0, {}));
  pool.seed(BlockId{0});
  for (std::uint64_t i = 1; i <= 10; ++i) {
    view.attach(blk(i, 1.0, {BlockId{0}}));
    view.on_scheduled(BlockId{i}, 1.0, 100);
    pool.admit(view, BlockId{i}, 1.0);
  }
  return pool;
}

TEST(TipPool, UniformSelectionFrequencies) {
  LedgerView view;
  const TipPool pool = ten_tips(view);
  ASSERT_EQ(pool.tip_count(), 10u);
  Rng rng(77);
  std::map<std::uint64_t, int> counts;
  const int draws = 10000;
  for (int i = 0; i < draws; ++i) {
    const auto picked = pool.select_tips(2, rng);
    ASSERT_EQ(picked.size(), 2u);
    ASSERT_NE(picked[0], picked[1]);
    for (const BlockId b : picked) ++counts[b.value];
  }
  double chi2 = 0.0;
  const double expected = 0.2 * draws;
  for (const auto& [id, c] : counts) {
    EXPECT_NEAR(static_cast<double>(c) / draws, 0.2, 0.02) << id;
    chi2 += (c - expected) * (c - expected) / expected;
  }
  // 9 degrees of freedom, p = 0.001.
  EXPECT_LT(chi2, 27.88);
}

TEST(TipPool, SelectingWholePool) {
  LedgerView view;
  const TipPool pool = ten_tips(view);
  Rng rng(2);
  auto picked = pool.select_tips(10, rng);
  std::sort(picked.begin(), picked.end());
  EXPECT_EQ(picked, pool.tips());
}

}  // namespace
}  // namespace tanglesim

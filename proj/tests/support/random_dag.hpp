#pragma once

// Random DAG fixtures shared by the unit tests and the acceptance binary.

#include <algorithm>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "tanglesim/dag.hpp"
#include "tanglesim/rng.hpp"

namespace tanglesim::testing {

struct RandomDag {
  std::vector<BlockRef> blocks;  // genesis first, then in issue order
  std::vector<BlockId> scheduled;
};

/// `count` blocks (including genesis) issued one per time unit. Each block
/// takes 1..max_parents distinct parents, biased toward the last `window`
/// blocks so the DAG has some width. Blocks are scheduled in an order that is
/// shuffled locally, so a child can be scheduled before its parent, and about
/// `unscheduled` of them are never scheduled.
inline RandomDag make_random_dag(Rng& rng, std::size_t count, std::size_t max_parents = 2,
                                 std::size_t window = 20, double unscheduled = 0.1) {
  RandomDag dag;
  dag.blocks.push_back(make_block(BlockId{0}, NodeId{0}, 0.0, {}));
  for (std::size_t i = 1; i < count; ++i) {
    const std::size_t lo = i > window ? i - window : 0;
    const std::size_t span = i - lo;
    const std::size_t k = 1 + static_cast<std::size_t>(rng.below(std::min(max_parents, span)));
    std::vector<BlockId> parents;
    for (const std::size_t j : rng.sample_indices(span, k)) parents.push_back(BlockId{lo + j});
    std::sort(parents.begin(), parents.end());
    dag.blocks.push_back(make_block(BlockId{i}, NodeId{static_cast<std::uint32_t>(i % 7)},
                                    static_cast<SimTime>(i), std::move(parents)));
  }
  std::vector<BlockId> order;
  for (std::size_t i = 1; i < count; ++i) {
    if (rng.uniform01() >= unscheduled) order.push_back(BlockId{i});
  }
  for (std::size_t i = 0; i + 1 < order.size(); ++i) {
    if (rng.uniform01() < 0.3) std::swap(order[i], order[i + 1]);
  }
  dag.scheduled = std::move(order);
  return dag;
}

/// Attaches every block of `dag` to `view` in issue order. Genesis is
/// bootstrapped (scheduled and confirmed at t=0).
inline void attach_all(const RandomDag& dag, LedgerView& view) {
  view.bootstrap_genesis(dag.blocks.front());
  for (std::size_t i = 1; i < dag.blocks.size(); ++i) view.attach(dag.blocks[i]);
}

/// Every ancestor of `id`, including itself.
inline std::unordered_set<std::uint64_t> past_cone(const LedgerView& view, BlockId id) {
  std::unordered_set<std::uint64_t> seen{id.value};
  std::vector<BlockId> stack{id};
  while (!stack.empty()) {
    const BlockId b = stack.back();
    stack.pop_back();
    for (const BlockId p : view.find(b)->block->parents) {
      if (seen.insert(p.value).second) stack.push_back(p);
    }
  }
  return seen;
}

/// Latest confirm time over the whole past cone with issue time >= cutoff,
/// found by a full scan of the view.
inline std::optional<SimTime> exhaustive_latest_confirmed(const LedgerView& view, BlockId id,
                                                          SimTime cutoff) {
  std::optional<SimTime> best;
  for (const std::uint64_t b : past_cone(view, id)) {
    const LedgerEntry* e = view.find(BlockId{b});
    if (!e->confirm_time || e->block->issue_time < cutoff) continue;
    if (!best || *e->confirm_time > *best) best = e->confirm_time;
  }
  return best;
}

}  // namespace tanglesim::testing

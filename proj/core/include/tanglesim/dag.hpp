#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "tanglesim/types.hpp"

namespace tanglesim {

enum class AttachResult { Solid, Pending, Duplicate };

/// How on_scheduled propagates weight into the past-cone.
///
/// Exact increments every ancestor. SaturateConfirmed stops at blocks that are
/// already confirmed: every ancestor of a confirmed block is itself confirmed
/// (its approver set is a superset), so confirmation times are identical in
/// both modes and only the weights of confirmed blocks stop growing.
enum class WeightMode { Exact, SaturateConfirmed };

/// How the past-cone confirmation search walks the DAG.
///
/// Exhaustive expands every block inside the horizon. PruneAtConfirmed does not
/// expand past a confirmed block; this returns the same answer whenever
/// confirmations were produced by on_scheduled, because an ancestor is never
/// confirmed later than its descendant.
enum class ConeSearch { Exhaustive, PruneAtConfirmed };

struct LedgerEntry {
  BlockRef block;
  std::optional<SimTime> schedule_time;
  std::uint64_t cumulative_weight = 0;
  std::optional<SimTime> confirm_time;
  std::vector<BlockId> children;
};

struct AttachOutcome {
  AttachResult result = AttachResult::Pending;
  /// Blocks that became solid during this call, in solidification order. The
  /// attached block comes first when it is solid; promoted descendants follow.
  std::vector<BlockId> solidified;
  /// Parents of the attached block that are not known to this view.
  std::vector<BlockId> missing;
};

/// One node's local copy of the DAG.
///
/// Blocks whose parents are all present are solid and live in a dense table;
/// others wait in a pending buffer until their last missing parent arrives.
/// Cumulative weight only accrues through on_scheduled.
class LedgerView {
 public:
  explicit LedgerView(WeightMode mode = WeightMode::Exact) : mode_(mode) {}

  /// Throws MalformedBlock on structural violations; the view is unchanged.
  AttachOutcome attach(BlockRef block);

  /// Attaches genesis, schedules it at t=0 and marks it confirmed at t=0.
  void bootstrap_genesis(BlockRef genesis);

  /// Adds the weight of a freshly scheduled block to itself and its past-cone.
  /// Returns the blocks whose weight reached `cw_threshold` during this call.
  std::vector<BlockId> on_scheduled(BlockId id, SimTime schedule_time, std::uint64_t cw_threshold);

  /// Brute-force cumulative weight: one (own, when scheduled) plus the number
  /// of scheduled blocks that have `id` in their past-cone. Full scan.
  [[nodiscard]] std::uint64_t recount_cw(BlockId id) const;

  /// Latest confirmation time among blocks reachable from `id` (inclusive)
  /// whose issue time is within `bfs_horizon` of `now`.
  [[nodiscard]] std::optional<SimTime> most_recent_confirmed_in_past_cone(
      BlockId id, SimTime now, SimTime bfs_horizon,
      ConeSearch search = ConeSearch::Exhaustive) const;

  /// Past-cone confirmation time; nullopt when nothing confirmed is in range.
  /// Negative differences clamp to zero.
  [[nodiscard]] std::optional<SimTime> pct(BlockId id, SimTime schedule_time, SimTime bfs_horizon,
                                           ConeSearch search = ConeSearch::Exhaustive) const;

  /// Forces a confirmation time. Used to seed genesis and by test fixtures;
  /// a confirmation that is already set is left untouched.
  void mark_confirmed(BlockId id, SimTime at);

  [[nodiscard]] const LedgerEntry* find(BlockId id) const;
  [[nodiscard]] bool is_solid(BlockId id) const { return index_.contains(id); }
  [[nodiscard]] bool is_pending(BlockId id) const { return pending_.contains(id); }
  [[nodiscard]] bool contains(BlockId id) const { return is_solid(id) || is_pending(id); }
  [[nodiscard]] bool is_scheduled(BlockId id) const;
  [[nodiscard]] bool is_confirmed(BlockId id) const;

  [[nodiscard]] std::size_t solid_count() const noexcept { return slots_.size(); }
  [[nodiscard]] std::size_t pending_count() const noexcept { return pending_.size(); }
  [[nodiscard]] std::size_t scheduled_count() const noexcept { return scheduled_count_; }
  [[nodiscard]] std::optional<BlockId> genesis_id() const noexcept { return genesis_; }
  [[nodiscard]] WeightMode weight_mode() const noexcept { return mode_; }

  /// Solid entries in solidification order.
  [[nodiscard]] std::vector<BlockId> solid_ids() const;

  /// Blocks a pending block is still waiting for.
  [[nodiscard]] std::vector<BlockId> missing_parents(BlockId pending_id) const;

 private:
  using Slot = std::uint32_t;

  struct Node {
    LedgerEntry entry;
    std::vector<Slot> parents;  // ascending BlockId order
  };

  struct PendingBlock {
    BlockRef block;
    std::size_t missing = 0;
  };

  void validate_shape(const Block& block) const;
  bool timestamps_consistent(const Block& block) const;
  Slot insert_solid(BlockRef block);
  void promote_waiters(BlockId arrived, std::vector<BlockId>& solidified);
  [[nodiscard]] Slot slot_of(BlockId id) const;
  std::uint32_t next_epoch() const;

  WeightMode mode_;
  std::vector<Node> slots_;
  std::unordered_map<BlockId, Slot> index_;
  std::unordered_map<BlockId, PendingBlock> pending_;
  std::unordered_map<BlockId, std::vector<BlockId>> waiting_on_;
  std::optional<BlockId> genesis_;
  std::size_t scheduled_count_ = 0;

  // Traversal scratch space, reused across searches.
  mutable std::vector<std::uint32_t> visit_mark_;
  mutable std::uint32_t epoch_ = 0;
  mutable std::vector<Slot> frontier_;
};

}  // namespace tanglesim

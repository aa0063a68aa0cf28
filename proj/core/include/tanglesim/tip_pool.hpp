#pragma once

#include <cstddef>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "tanglesim/dag.hpp"
#include "tanglesim/rng.hpp"
#include "tanglesim/types.hpp"

namespace tanglesim {

enum class Admission { Admitted, RejectedPCT, RejectedNoConfirmedAncestor };

const char* to_string(Admission a);

struct TipPoolParams {
  SimTime pct_threshold = 25.0;
  SimTime bfs_horizon = 80.0;
  bool pct_enabled = true;
  /// Blocks scheduled before this instant are admitted even when no confirmed
  /// ancestor is found. Defaults to pct_threshold when unset.
  std::optional<SimTime> bootstrap_window;
  ConeSearch search = ConeSearch::Exhaustive;
};

/// A node's set of selectable tips, guarded by the past-cone confirmation time
/// filter.
class TipPool {
 public:
  explicit TipPool(TipPoolParams params = {});

  /// Inserts the initial tip (genesis). Bypasses the filter.
  void seed(BlockId genesis);

  /// Runs the admission filter for a block that was just scheduled in `view`.
  /// On admission the block's parents leave the pool. Throws PipelineError if
  /// the block is not scheduled in `view`.
  Admission admit(const LedgerView& view, BlockId id, SimTime schedule_time);

  /// Uniform sample without replacement of min(k, tip_count()) tips. The pool
  /// itself is not modified.
  [[nodiscard]] std::vector<BlockId> select_tips(std::size_t k, Rng& rng) const;

  [[nodiscard]] std::size_t tip_count() const noexcept { return tips_.size(); }
  [[nodiscard]] bool contains(BlockId id) const { return position_.contains(id); }
  [[nodiscard]] bool was_admitted(BlockId id) const { return admitted_.contains(id); }

  /// Current tips in ascending id order.
  [[nodiscard]] std::vector<BlockId> tips() const;

  [[nodiscard]] const TipPoolParams& params() const noexcept { return params_; }

 private:
  void insert(BlockId id);
  void erase(BlockId id);

  TipPoolParams params_;
  std::vector<BlockId> tips_;
  std::unordered_map<BlockId, std::size_t> position_;
  std::unordered_set<BlockId> admitted_;
};

}  // namespace tanglesim

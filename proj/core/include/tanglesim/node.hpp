#pragma once

#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "tanglesim/adversary.hpp"
#include "tanglesim/dag.hpp"
#include "tanglesim/inbox.hpp"
#include "tanglesim/node_mode.hpp"
#include "tanglesim/rate_setter.hpp"
#include "tanglesim/reputation.hpp"
#include "tanglesim/rng.hpp"
#include "tanglesim/tip_pool.hpp"

namespace tanglesim {

struct NodeParams {
  double nu = 20.0;                 // scheduling rate, blocks/s
  std::uint64_t cw_threshold = 25;  // confirmation weight
  std::size_t max_inbox = 200;
  std::size_t k_parents = 2;
  TipPoolParams tips;
  AimdParams aimd;
  WeightMode weight_mode = WeightMode::SaturateConfirmed;
};

/// One node's runtime state: ledger view, inbox, scheduler, tip pool and rate
/// setter. Methods return effects; the engine turns them into events.
class Node {
 public:
  struct ReceiveOutcome {
    bool duplicate = false;
    /// Blocks that became solid and were handed to the inbox.
    std::vector<BlockId> solidified;
    /// Parents not known locally (candidates for a solidification request).
    std::vector<BlockId> missing;
    std::vector<QueuedBlock> victims;
  };

  struct ScheduledEffects {
    std::vector<NodeId> forward_to;
    std::vector<BlockId> confirmed;
    Admission admission = Admission::Admitted;
  };

  Node(NodeId id, NodeMode mode, const ReputationVector& rep, std::vector<NodeId> neighbors,
       const NodeParams& params, BlockRef genesis);

  /// Attaches a block received from `from` (empty for own blocks) and enqueues
  /// everything that became solid.
  ReceiveOutcome receive(BlockRef block, std::optional<NodeId> from, SimTime now);

  /// Next block picked by the DRR scheduler, if any.
  std::optional<QueuedBlock> next_scheduled();

  /// Post-scheduling actions, in order: forwarding targets, weight update,
  /// tip admission.
  ScheduledEffects on_scheduled_block(const QueuedBlock& item, SimTime now);

  /// A block issued by this node at `now` with parents drawn from its tips.
  [[nodiscard]] BlockRef create_block(BlockId id, SimTime now, Rng& tip_rng) const;

  /// Malicious path: the block skips the local scheduler and is scheduled and
  /// admitted immediately. Forwarding is decided by the caller.
  ScheduledEffects issue_direct(BlockRef block, SimTime now);

  /// AIMD update from the own-issuer queue length. No-op unless best-effort.
  double rate_tick();

  [[nodiscard]] std::vector<IssueStream> streams() const;

  [[nodiscard]] NodeId id() const noexcept { return id_; }
  [[nodiscard]] const NodeMode& mode() const noexcept { return mode_; }
  [[nodiscard]] bool malicious() const { return is_malicious(mode_); }
  [[nodiscard]] std::span<const NodeId> neighbors() const noexcept { return neighbors_; }
  [[nodiscard]] double guaranteed() const noexcept { return guaranteed_; }
  [[nodiscard]] const LedgerView& ledger() const noexcept { return ledger_; }
  [[nodiscard]] const TipPool& tip_pool() const noexcept { return tips_; }
  [[nodiscard]] const Inbox& inbox() const noexcept { return inbox_; }
  [[nodiscard]] const RateSetter& rate_setter() const noexcept { return rate_setter_; }
  [[nodiscard]] const NodeParams& params() const noexcept { return params_; }

 private:
  NodeId id_;
  NodeMode mode_;
  const ReputationVector* rep_;
  std::vector<NodeId> neighbors_;
  NodeParams params_;
  double guaranteed_;

  LedgerView ledger_;
  TipPool tips_;
  Inbox inbox_;
  DrrScheduler drr_;
  RateSetter rate_setter_;
  std::unordered_map<BlockId, std::optional<NodeId>> pending_from_;
};

}  // namespace tanglesim

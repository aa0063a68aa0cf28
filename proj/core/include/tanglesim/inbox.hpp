#pragma once

#include <cstddef>
#include <deque>
#include <optional>
#include <unordered_set>
#include <vector>

#include "tanglesim/reputation.hpp"
#include "tanglesim/types.hpp"

namespace tanglesim {

struct QueuedBlock {
  BlockRef block;
  SimTime enqueue_time = 0.0;
  /// Neighbor the block arrived from; empty for locally issued blocks.
  std::optional<NodeId> from;
};

struct EnqueueResult {
  enum class Status { Enqueued, DuplicateDropped };
  Status status = Status::Enqueued;
  /// Blocks evicted by drop-head, oldest first. May include the block just
  /// enqueued.
  std::vector<QueuedBlock> victims;
};

/// Per-issuer FIFO queues with a cap on total occupancy.
///
/// When occupancy exceeds the cap, the head of the queue with the largest
/// length/reputation ratio is evicted (ties: longer queue, then smaller issuer
/// id) until occupancy is back under the cap. Evicted ids stay in the seen set.
class Inbox {
 public:
  Inbox(std::size_t issuers, std::size_t max_occupancy);

  EnqueueResult enqueue(const ReputationVector& rep, QueuedBlock item);

  [[nodiscard]] std::size_t occupancy() const noexcept { return occupancy_; }
  [[nodiscard]] std::size_t capacity() const noexcept { return max_occupancy_; }
  [[nodiscard]] std::size_t queue_length(NodeId issuer) const { return queues_.at(issuer.index).size(); }
  [[nodiscard]] std::size_t issuer_count() const noexcept { return queues_.size(); }
  [[nodiscard]] bool empty() const noexcept { return occupancy_ == 0; }
  [[nodiscard]] bool has_seen(BlockId id) const { return seen_.contains(id); }

  [[nodiscard]] const QueuedBlock& front(NodeId issuer) const { return queues_.at(issuer.index).front(); }
  QueuedBlock pop(NodeId issuer);

 private:
  [[nodiscard]] NodeId drop_target(const ReputationVector& rep) const;

  std::vector<std::deque<QueuedBlock>> queues_;
  std::size_t occupancy_ = 0;
  std::size_t max_occupancy_;
  std::unordered_set<BlockId> seen_;
};

/// Deficit round robin over the inbox queues with one unit of cost per block.
/// Quanta are proportional to reputation, scaled so the largest is 1.
class DrrScheduler {
 public:
  explicit DrrScheduler(const ReputationVector& rep);
  explicit DrrScheduler(std::vector<double> quanta);

  /// Serves one block, or nullopt when every queue is empty.
  std::optional<QueuedBlock> next(Inbox& inbox);

  [[nodiscard]] double deficit(NodeId issuer) const { return deficit_.at(issuer.index); }
  [[nodiscard]] double quantum(NodeId issuer) const { return quantum_.at(issuer.index); }

 private:
  void advance();

  std::vector<double> quantum_;
  std::vector<double> deficit_;
  std::size_t cursor_ = 0;
  bool topped_up_ = false;  // cursor queue already received this round's quantum
};

}  // namespace tanglesim

#include "tanglesim/node.hpp"

namespace tanglesim {

Node::Node(NodeId id, NodeMode mode, const ReputationVector& rep, std::vector<NodeId> neighbors,
           const NodeParams& params, BlockRef genesis)
    : id_(id),
      mode_(mode),
      rep_(&rep),
      neighbors_(std::move(neighbors)),
      params_(params),
      guaranteed_(guaranteed_rate(rep, id, params.nu)),
      ledger_(params.weight_mode),
      tips_(params.tips),
      inbox_(rep.size(), params.max_inbox),
      drr_(rep),
      rate_setter_(guaranteed_, params.aimd) {
  const BlockId genesis_id = genesis->id;
  ledger_.bootstrap_genesis(std::move(genesis));
  tips_.seed(genesis_id);
}

Node::ReceiveOutcome Node::receive(BlockRef block, std::optional<NodeId> from, SimTime now) {
  ReceiveOutcome out;
  const BlockId id = block->id;
  AttachOutcome attached = ledger_.attach(std::move(block));
  if (attached.result == AttachResult::Duplicate) {
    out.duplicate = true;
    return out;
  }
  if (attached.result == AttachResult::Pending) pending_from_.emplace(id, from);
  out.missing = std::move(attached.missing);

  for (const BlockId s : attached.solidified) {
    std::optional<NodeId> arrived_from = from;
    if (s != id) {
      const auto it = pending_from_.find(s);
      if (it != pending_from_.end()) {
        arrived_from = it->second;
        pending_from_.erase(it);
      }
    }
    QueuedBlock item{ledger_.find(s)->block, now, arrived_from};
    EnqueueResult r = inbox_.enqueue(*rep_, std::move(item));
    if (r.status == EnqueueResult::Status::Enqueued) out.solidified.push_back(s);
    for (auto& v : r.victims) out.victims.push_back(std::move(v));
  }
  return out;
}

std::optional<QueuedBlock> Node::next_scheduled() { return drr_.next(inbox_); }

Node::ScheduledEffects Node::on_scheduled_block(const QueuedBlock& item, SimTime now) {
  ScheduledEffects fx;
  const Block& block = *item.block;
  for (const NodeId n : neighbors_) {
    if (item.from && n == *item.from) continue;
    if (n == block.issuer) continue;
    fx.forward_to.push_back(n);
  }
  fx.confirmed = ledger_.on_scheduled(block.id, now, params_.cw_threshold);
  fx.admission = tips_.admit(ledger_, block.id, now);
  return fx;
}

BlockRef Node::create_block(BlockId id, SimTime now, Rng& tip_rng) const {
  return make_block(id, id_, now, tips_.select_tips(params_.k_parents, tip_rng));
}

Node::ScheduledEffects Node::issue_direct(BlockRef block, SimTime now) {
  const BlockId id = block->id;
  if (ledger_.attach(std::move(block)).result != AttachResult::Solid) {
    throw PipelineError("issue_direct: own block " + to_string(id) + " is not solid");
  }
  ScheduledEffects fx;
  fx.confirmed = ledger_.on_scheduled(id, now, params_.cw_threshold);
  fx.admission = tips_.admit(ledger_, id, now);
  return fx;
}

double Node::rate_tick() {
  if (!std::holds_alternative<BestEffort>(mode_)) return rate_setter_.lambda();
  return rate_setter_.tick(inbox_.queue_length(id_));
}

std::vector<IssueStream> Node::streams() const {
  return issue_streams(mode_, guaranteed_, rate_setter_.lambda(), neighbors_);
}

}  // namespace tanglesim

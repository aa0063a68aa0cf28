#include "tanglesim/dag.hpp"

#include <algorithm>
#include <deque>
#include <limits>

#include <spdlog/spdlog.h>

namespace tanglesim {

std::string to_string(BlockId id) { return "block#" + std::to_string(id.value); }
std::string to_string(NodeId id) { return "node#" + std::to_string(id.index); }

void LedgerView::validate_shape(const Block& block) const {
  if (block.parents.empty()) {
    if (genesis_.has_value() || !slots_.empty() || !pending_.empty()) {
      throw MalformedBlock(to_string(block.id) + " has no parents but genesis is already set");
    }
    return;
  }
  for (std::size_t i = 0; i < block.parents.size(); ++i) {
    if (block.parents[i] == block.id) {
      throw MalformedBlock(to_string(block.id) + " references itself");
    }
    for (std::size_t j = i + 1; j < block.parents.size(); ++j) {
      if (block.parents[i] == block.parents[j]) {
        throw MalformedBlock(to_string(block.id) + " lists parent " +
                             to_string(block.parents[i]) + " twice");
      }
    }
  }
}

bool LedgerView::timestamps_consistent(const Block& block) const {
  return std::all_of(block.parents.begin(), block.parents.end(), [&](BlockId p) {
    return slots_[index_.at(p)].entry.block->issue_time < block.issue_time;
  });
}

LedgerView::Slot LedgerView::insert_solid(BlockRef block) {
  const auto slot = static_cast<Slot>(slots_.size());
  Node node;
  node.parents.reserve(block->parents.size());
  for (const BlockId p : block->parents) node.parents.push_back(index_.at(p));
  std::sort(node.parents.begin(), node.parents.end(), [&](Slot a, Slot b) {
    return slots_[a].entry.block->id < slots_[b].entry.block->id;
  });
  for (const Slot p : node.parents) slots_[p].entry.children.push_back(block->id);
  if (block->parents.empty()) genesis_ = block->id;
  index_.emplace(block->id, slot);
  node.entry.block = std::move(block);
  slots_.push_back(std::move(node));
  visit_mark_.push_back(0);
  return slot;
}

void LedgerView::promote_waiters(BlockId arrived, std::vector<BlockId>& solidified) {
  std::deque<BlockId> work{arrived};
  while (!work.empty()) {
    const BlockId current = work.front();
    work.pop_front();
    auto waiters_it = waiting_on_.find(current);
    if (waiters_it == waiting_on_.end()) continue;
    const std::vector<BlockId> waiters = std::move(waiters_it->second);
    waiting_on_.erase(waiters_it);
    for (const BlockId w : waiters) {
      auto pending_it = pending_.find(w);
      if (pending_it == pending_.end()) continue;
      if (--pending_it->second.missing > 0) continue;
      BlockRef block = std::move(pending_it->second.block);
      pending_.erase(pending_it);
      if (!timestamps_consistent(*block)) {
        spdlog::warn("discarding {}: parent issued no earlier than child", to_string(block->id));
        continue;
      }
      insert_solid(std::move(block));
      solidified.push_back(w);
      work.push_back(w);
    }
  }
}

AttachOutcome LedgerView::attach(BlockRef block) {
  AttachOutcome outcome;
  if (contains(block->id)) {
    outcome.result = AttachResult::Duplicate;
    return outcome;
  }
  validate_shape(*block);

  std::size_t unresolved = 0;
  for (const BlockId p : block->parents) {
    if (is_solid(p)) continue;
    ++unresolved;
    if (!is_pending(p)) outcome.missing.push_back(p);
  }

  const BlockId id = block->id;
  if (unresolved == 0) {
    if (!timestamps_consistent(*block)) {
      throw MalformedBlock(to_string(id) + " has a parent issued no earlier than itself");
    }
    insert_solid(std::move(block));
    outcome.result = AttachResult::Solid;
    outcome.solidified.push_back(id);
    promote_waiters(id, outcome.solidified);
    return outcome;
  }

  for (const BlockId p : block->parents) {
    if (!is_solid(p)) waiting_on_[p].push_back(id);
  }
  pending_.emplace(id, PendingBlock{std::move(block), unresolved});
  outcome.result = AttachResult::Pending;
  return outcome;
}

void LedgerView::bootstrap_genesis(BlockRef genesis) {
  if (!genesis->is_genesis()) throw MalformedBlock("bootstrap_genesis: block has parents");
  const BlockId id = genesis->id;
  if (attach(std::move(genesis)).result != AttachResult::Solid) {
    throw PipelineError("bootstrap_genesis: genesis did not attach solid");
  }
  on_scheduled(id, 0.0, std::numeric_limits<std::uint64_t>::max());
  mark_confirmed(id, 0.0);
}

LedgerView::Slot LedgerView::slot_of(BlockId id) const {
  const auto it = index_.find(id);
  if (it == index_.end()) {
    throw PipelineError(to_string(id) + (is_pending(id) ? " is not solid" : " is unknown"));
  }
  return it->second;
}

std::uint32_t LedgerView::next_epoch() const {
  if (++epoch_ == 0) {
    std::fill(visit_mark_.begin(), visit_mark_.end(), 0);
    epoch_ = 1;
  }
  return epoch_;
}

std::vector<BlockId> LedgerView::on_scheduled(BlockId id, SimTime schedule_time,
                                              std::uint64_t cw_threshold) {
  const Slot start = slot_of(id);
  LedgerEntry& own = slots_[start].entry;
  if (own.schedule_time) throw PipelineError(to_string(id) + " scheduled twice");
  own.schedule_time = schedule_time;
  ++scheduled_count_;

  std::vector<BlockId> confirmed;
  auto add_weight = [&](Slot s) {
    LedgerEntry& e = slots_[s].entry;
    ++e.cumulative_weight;
    if (!e.confirm_time && e.cumulative_weight >= cw_threshold) {
      e.confirm_time = schedule_time;
      confirmed.push_back(e.block->id);
    }
  };

  add_weight(start);
  const std::uint32_t mark = next_epoch();
  visit_mark_[start] = mark;
  frontier_.clear();
  frontier_.push_back(start);
  for (std::size_t head = 0; head < frontier_.size(); ++head) {
    for (const Slot p : slots_[frontier_[head]].parents) {
      if (visit_mark_[p] == mark) continue;
      visit_mark_[p] = mark;
      if (mode_ == WeightMode::SaturateConfirmed && slots_[p].entry.confirm_time) continue;
      add_weight(p);
      frontier_.push_back(p);
    }
  }
  return confirmed;
}

std::uint64_t LedgerView::recount_cw(BlockId id) const {
  const Slot target = slot_of(id);
  if (!slots_[target].entry.schedule_time) {
    throw PipelineError("recount_cw: " + to_string(id) + " is not scheduled");
  }
  // Slots are stored in solidification order, which is topological: a block is
  // a descendant of the target iff one of its parents is the target or a
  // descendant.
  std::vector<char> descends(slots_.size(), 0);
  descends[target] = 1;
  std::uint64_t count = 1;
  for (Slot s = target + 1; s < slots_.size(); ++s) {
    const auto& parents = slots_[s].parents;
    descends[s] = std::any_of(parents.begin(), parents.end(), [&](Slot p) { return descends[p]; });
    if (descends[s] && slots_[s].entry.schedule_time) ++count;
  }
  return count;
}

std::optional<SimTime> LedgerView::most_recent_confirmed_in_past_cone(BlockId id, SimTime now,
                                                                      SimTime bfs_horizon,
                                                                      ConeSearch search) const {
  const Slot start = slot_of(id);
  const SimTime cutoff = now - bfs_horizon;
  std::optional<SimTime> latest;

  const std::uint32_t mark = next_epoch();
  visit_mark_[start] = mark;
  frontier_.clear();
  frontier_.push_back(start);
  for (std::size_t head = 0; head < frontier_.size(); ++head) {
    const Node& node = slots_[frontier_[head]];
    if (node.entry.block->issue_time < cutoff) continue;
    if (node.entry.confirm_time) {
      if (!latest || *node.entry.confirm_time > *latest) latest = node.entry.confirm_time;
      if (search == ConeSearch::PruneAtConfirmed) continue;
    }
    for (const Slot p : node.parents) {
      if (visit_mark_[p] == mark) continue;
      visit_mark_[p] = mark;
      frontier_.push_back(p);
    }
  }
  return latest;
}

std::optional<SimTime> LedgerView::pct(BlockId id, SimTime schedule_time, SimTime bfs_horizon,
                                       ConeSearch search) const {
  const auto latest = most_recent_confirmed_in_past_cone(id, schedule_time, bfs_horizon, search);
  if (!latest) return std::nullopt;
  const SimTime value = schedule_time - *latest;
  if (value < 0.0) {
    spdlog::debug("negative PCT {} for {}; clamped to 0", value, to_string(id));
    return 0.0;
  }
  return value;
}

void LedgerView::mark_confirmed(BlockId id, SimTime at) {
  LedgerEntry& e = slots_[slot_of(id)].entry;
  if (!e.confirm_time) e.confirm_time = at;
}

const LedgerEntry* LedgerView::find(BlockId id) const {
  const auto it = index_.find(id);
  return it == index_.end() ? nullptr : &slots_[it->second].entry;
}

bool LedgerView::is_scheduled(BlockId id) const {
  const auto* e = find(id);
  return e != nullptr && e->schedule_time.has_value();
}

bool LedgerView::is_confirmed(BlockId id) const {
  const auto* e = find(id);
  return e != nullptr && e->confirm_time.has_value();
}

std::vector<BlockId> LedgerView::solid_ids() const {
  std::vector<BlockId> ids;
  ids.reserve(slots_.size());
  for (const auto& n : slots_) ids.push_back(n.entry.block->id);
  return ids;
}

std::vector<BlockId> LedgerView::missing_parents(BlockId pending_id) const {
  std::vector<BlockId> out;
  const auto it = pending_.find(pending_id);
  if (it == pending_.end()) return out;
  for (const BlockId p : it->second.block->parents) {
    if (!contains(p)) out.push_back(p);
  }
  return out;
}

}  // namespace tanglesim

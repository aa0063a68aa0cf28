#include "tanglesim/tip_pool.hpp"

#include <algorithm>
#include <stdexcept>

namespace tanglesim {

const char* to_string(Admission a) {
  switch (a) {
    case Admission::Admitted: return "admitted";
    case Admission::RejectedPCT: return "rejected_pct";
    case Admission::RejectedNoConfirmedAncestor: return "rejected_no_confirmed_ancestor";
  }
  return "?";
}

TipPool::TipPool(TipPoolParams params) : params_(params) {
  if (!params_.bootstrap_window) params_.bootstrap_window = params_.pct_threshold;
}

void TipPool::seed(BlockId genesis) {
  admitted_.insert(genesis);
  insert(genesis);
}

void TipPool::insert(BlockId id) {
  if (position_.contains(id)) return;
  position_.emplace(id, tips_.size());
  tips_.push_back(id);
}

void TipPool::erase(BlockId id) {
  const auto it = position_.find(id);
  if (it == position_.end()) return;
  const std::size_t pos = it->second;
  position_.erase(it);
  if (pos + 1 != tips_.size()) {
    tips_[pos] = tips_.back();
    position_[tips_[pos]] = pos;
  }
  tips_.pop_back();
}

Admission TipPool::admit(const LedgerView& view, BlockId id, SimTime schedule_time) {
  const LedgerEntry* entry = view.find(id);
  if (entry == nullptr || !entry->schedule_time) {
    throw PipelineError("admit: " + to_string(id) + " is not scheduled");
  }

  if (params_.pct_enabled) {
    const auto value = view.pct(id, schedule_time, params_.bfs_horizon, params_.search);
    if (!value) {
      if (schedule_time >= *params_.bootstrap_window) return Admission::RejectedNoConfirmedAncestor;
    } else if (*value >= params_.pct_threshold) {
      return Admission::RejectedPCT;
    }
  }

  for (const BlockId p : entry->block->parents) erase(p);
  admitted_.insert(id);
  // A child admitted earlier already approves this block, so it is not a tip.
  const bool approved = std::any_of(entry->children.begin(), entry->children.end(),
                                    [&](BlockId c) { return admitted_.contains(c); });
  if (!approved) insert(id);
  return Admission::Admitted;
}

std::vector<BlockId> TipPool::select_tips(std::size_t k, Rng& rng) const {
  if (tips_.empty()) throw PipelineError("select_tips: tip pool is empty");
  std::vector<BlockId> picked;
  for (const std::size_t idx : rng.sample_indices(tips_.size(), k)) picked.push_back(tips_[idx]);
  return picked;
}

std::vector<BlockId> TipPool::tips() const {
  std::vector<BlockId> sorted = tips_;
  std::sort(sorted.begin(), sorted.end());
  return sorted;
}

}  // namespace tanglesim

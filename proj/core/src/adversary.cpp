#include "tanglesim/adversary.hpp"

#include <algorithm>

namespace tanglesim {

double spammer_rate(const MaliciousSpammer& mode, double guaranteed_rate) {
  return mode.multiple * guaranteed_rate;
}

std::vector<IssueStream> issue_streams(const NodeMode& mode, double guaranteed_rate,
                                       double current_rate, std::span<const NodeId> neighbors) {
  std::vector<IssueStream> streams;
  if (std::holds_alternative<Inactive>(mode)) return streams;
  if (const auto* c = std::get_if<Content>(&mode)) {
    streams.push_back({c->fraction * guaranteed_rate, IssueRoute::OwnInbox, std::nullopt});
  } else if (std::holds_alternative<BestEffort>(mode)) {
    streams.push_back({current_rate, IssueRoute::OwnInbox, std::nullopt});
  } else if (const auto* s = std::get_if<MaliciousSpammer>(&mode)) {
    streams.push_back({spammer_rate(*s, guaranteed_rate), IssueRoute::OwnInbox, std::nullopt});
  } else {
    for (const NodeId n : neighbors) {
      streams.push_back({guaranteed_rate, IssueRoute::DirectOne, n});
    }
  }
  return streams;
}

void MultiRateLog::record(NodeId target, BlockId block, SimTime at) {
  sent_[target].emplace_back(at, block);
}

bool MultiRateLog::streams_disjoint() const {
  std::unordered_set<BlockId> all;
  for (const auto& [target, blocks] : sent_) {
    for (const auto& entry : blocks) {
      if (!all.insert(entry.second).second) return false;
    }
  }
  return true;
}

std::size_t MultiRateLog::sent_to(NodeId target) const {
  const auto it = sent_.find(target);
  return it == sent_.end() ? 0 : it->second.size();
}

std::size_t MultiRateLog::max_in_window(NodeId target, SimTime window_s) const {
  const auto it = sent_.find(target);
  if (it == sent_.end()) return 0;
  const auto& v = it->second;
  std::size_t best = 0;
  std::size_t lo = 0;
  for (std::size_t hi = 0; hi < v.size(); ++hi) {
    while (v[hi].first - v[lo].first >= window_s) ++lo;
    best = std::max(best, hi - lo + 1);
  }
  return best;
}

std::vector<NodeId> MultiRateLog::targets() const {
  std::vector<NodeId> out;
  for (const auto& [target, _] : sent_) out.push_back(target);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace tanglesim

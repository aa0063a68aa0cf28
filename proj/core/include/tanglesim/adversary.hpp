#pragma once

#include <optional>
#include <span>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "tanglesim/node_mode.hpp"
#include "tanglesim/types.hpp"

namespace tanglesim {

/// Where freshly issued blocks go.
enum class IssueRoute {
  OwnInbox,   // through the issuer's own scheduler, then flooded
  DirectOne,  // multi-rate: straight to a single neighbor, bypassing the scheduler
};

struct IssueStream {
  double rate = 0.0;  // blocks/s, Poisson
  IssueRoute route = IssueRoute::OwnInbox;
  std::optional<NodeId> target;  // set iff route == DirectOne
};

/// Issuance streams for a node. `current_rate` is the AIMD rate and only
/// matters for best-effort nodes. Inactive nodes get no streams.
std::vector<IssueStream> issue_streams(const NodeMode& mode, double guaranteed_rate,
                                       double current_rate, std::span<const NodeId> neighbors);

/// Offered load of a spammer.
double spammer_rate(const MaliciousSpammer& mode, double guaranteed_rate);

/// Bookkeeping for a multi-rate attacker's per-neighbor streams; lets tests and
/// metrics check that streams are disjoint and individually compliant.
class MultiRateLog {
 public:
  void record(NodeId target, BlockId block, SimTime at);

  [[nodiscard]] bool streams_disjoint() const;
  [[nodiscard]] std::size_t sent_to(NodeId target) const;
  /// Largest count sent to one target within any window of `window_s`.
  [[nodiscard]] std::size_t max_in_window(NodeId target, SimTime window_s) const;
  [[nodiscard]] std::vector<NodeId> targets() const;

 private:
  std::unordered_map<NodeId, std::vector<std::pair<SimTime, BlockId>>> sent_;
};

}  // namespace tanglesim

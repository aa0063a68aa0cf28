#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tanglesim/node_mode.hpp"
#include "tanglesim/reputation.hpp"
#include "tanglesim/tip_pool.hpp"
#include "tanglesim/types.hpp"

namespace tanglesim {

struct RateRow {
  SimTime time = 0.0;
  NodeId node;
  std::string mode;
  double rep = 0.0;
  double dr = 0.0;
  double cr = 0.0;
  double dr_scaled = 0.0;
  double cr_scaled = 0.0;
};

struct TipRow {
  SimTime time = 0.0;
  NodeId node;
  std::size_t tip_count = 0;
};

struct LatencyRow {
  BlockId block;
  NodeId issuer;
  SimTime issue_time = 0.0;
  SimTime full_confirm_time = 0.0;
  double latency = 0.0;
};

struct DropRow {
  SimTime time = 0.0;
  NodeId node;
  NodeId victim_issuer;
};

enum class EventKind { Issued, Received, Scheduled, ConfirmedLocal, Dropped };

/// Per-block milestones. Per-node times are NaN until the event happens.
struct BlockTimeline {
  BlockId id;
  NodeId issuer;
  SimTime issue_time = 0.0;
  std::vector<SimTime> receipt_time;
  std::vector<SimTime> schedule_time;
  std::vector<SimTime> confirm_time;
  std::vector<SimTime> admit_time;
  std::vector<std::uint8_t> dropped;
  std::optional<SimTime> disseminated_time;
  std::optional<SimTime> fully_confirmed_time;
  std::uint32_t honest_received = 0;
  std::uint32_t honest_confirmed = 0;
};

/// Admission statistics per node per one-second bucket; used for the tip-pool
/// law check (mean delay from issue to tip pool, and arrival rate).
struct AdmissionBucket {
  std::uint32_t count = 0;
  double delay_sum = 0.0;
};

/// Collects every metric the experiments report. Single writer: owned by the
/// engine and fed in event order.
class MetricsRecorder {
 public:
  MetricsRecorder(ReputationVector rep, std::vector<NodeMode> modes, double rate_window_s);

  /// Duplicate (kind, block, node) events are ignored. Returns false for those.
  bool record_event(EventKind kind, const Block& block, NodeId node, SimTime time);
  void record_admission(const Block& block, NodeId node, SimTime time, Admission admission);
  void record_drop(const Block& victim, NodeId node, SimTime time);

  /// Appends one rates row per node for the window ending at `now`.
  void sample_rates(SimTime now);
  void sample_tips(NodeId node, SimTime now, std::size_t tip_count);

  /// Rates over (now - window, now]; pure.
  [[nodiscard]] std::vector<RateRow> scaled_rates(SimTime window_s, SimTime now) const;

  /// Fully confirmed blocks in confirmation order (all issuers).
  [[nodiscard]] std::vector<LatencyRow> latency_rows() const;

  [[nodiscard]] const std::vector<RateRow>& rates() const noexcept { return rates_; }
  [[nodiscard]] const std::vector<TipRow>& tips() const noexcept { return tips_; }
  [[nodiscard]] const std::vector<DropRow>& drops() const noexcept { return drops_; }
  [[nodiscard]] const std::vector<BlockTimeline>& timelines() const noexcept { return blocks_; }
  [[nodiscard]] const BlockTimeline* timeline(BlockId id) const;
  [[nodiscard]] const std::vector<std::vector<AdmissionBucket>>& admissions() const noexcept {
    return admissions_;
  }
  [[nodiscard]] std::size_t honest_count() const noexcept { return honest_count_; }
  [[nodiscard]] bool honest(NodeId n) const { return honest_.at(n.index) != 0; }
  [[nodiscard]] std::size_t admission_rejections(NodeId n) const { return rejections_.at(n.index); }

 private:
  BlockTimeline& track(const Block& block);

  ReputationVector rep_;
  std::vector<NodeMode> modes_;
  std::vector<std::uint8_t> honest_;
  std::size_t honest_count_ = 0;
  double rate_window_s_;

  std::vector<BlockTimeline> blocks_;  // indexed by BlockId value
  std::vector<std::vector<SimTime>> disseminations_;  // per issuer, ascending
  std::vector<std::vector<SimTime>> confirmations_;   // per issuer, ascending
  std::vector<BlockId> confirmation_order_;

  std::vector<RateRow> rates_;
  std::vector<TipRow> tips_;
  std::vector<DropRow> drops_;
  std::vector<std::vector<AdmissionBucket>> admissions_;
  std::vector<std::size_t> rejections_;
};

}  // namespace tanglesim

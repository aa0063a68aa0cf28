#include "tanglesim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <spdlog/spdlog.h>

namespace tanglesim {
namespace {

constexpr SimTime kUnset = std::numeric_limits<SimTime>::quiet_NaN();

std::size_t count_in_window(const std::vector<SimTime>& times, SimTime lo, SimTime hi) {
  const auto first = std::upper_bound(times.begin(), times.end(), lo);
  const auto last = std::upper_bound(times.begin(), times.end(), hi);
  return static_cast<std::size_t>(std::distance(first, last));
}

const char* kind_name(EventKind k) {
  switch (k) {
    case EventKind::Issued: return "issued";
    case EventKind::Received: return "received";
    case EventKind::Scheduled: return "scheduled";
    case EventKind::ConfirmedLocal: return "confirmed";
    case EventKind::Dropped: return "dropped";
  }
  return "?";
}

}  // namespace

MetricsRecorder::MetricsRecorder(ReputationVector rep, std::vector<NodeMode> modes,
                                 double rate_window_s)
    : rep_(std::move(rep)), modes_(std::move(modes)), rate_window_s_(rate_window_s) {
  const std::size_t n = modes_.size();
  honest_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    honest_[i] = is_malicious(modes_[i]) ? 0 : 1;
    honest_count_ += honest_[i];
  }
  disseminations_.resize(n);
  confirmations_.resize(n);
  admissions_.resize(n);
  rejections_.assign(n, 0);
}

BlockTimeline& MetricsRecorder::track(const Block& block) {
  const auto idx = static_cast<std::size_t>(block.id.value);
  if (idx >= blocks_.size()) blocks_.resize(idx + 1);
  BlockTimeline& t = blocks_[idx];
  if (t.receipt_time.empty()) {
    const std::size_t n = modes_.size();
    t.id = block.id;
    t.issuer = block.issuer;
    t.issue_time = block.issue_time;
    t.receipt_time.assign(n, kUnset);
    t.schedule_time.assign(n, kUnset);
    t.confirm_time.assign(n, kUnset);
    t.admit_time.assign(n, kUnset);
    t.dropped.assign(n, 0);
  }
  return t;
}

const BlockTimeline* MetricsRecorder::timeline(BlockId id) const {
  const auto idx = static_cast<std::size_t>(id.value);
  if (idx >= blocks_.size() || blocks_[idx].receipt_time.empty()) return nullptr;
  return &blocks_[idx];
}

bool MetricsRecorder::record_event(EventKind kind, const Block& block, NodeId node, SimTime time) {
  BlockTimeline& t = track(block);
  const std::size_t i = node.index;
  auto set_once = [&](std::vector<SimTime>& slot) {
    if (!std::isnan(slot[i])) return false;
    slot[i] = time;
    return true;
  };

  bool fresh = true;
  switch (kind) {
    case EventKind::Issued:
      break;
    case EventKind::Received:
      fresh = set_once(t.receipt_time);
      if (fresh && honest_[i] && ++t.honest_received == honest_count_) {
        t.disseminated_time = time;
        disseminations_[t.issuer.index].push_back(time);
      }
      break;
    case EventKind::Scheduled:
      fresh = set_once(t.schedule_time);
      break;
    case EventKind::ConfirmedLocal:
      fresh = set_once(t.confirm_time);
      if (fresh && honest_[i] && ++t.honest_confirmed == honest_count_) {
        t.fully_confirmed_time = time;
        confirmations_[t.issuer.index].push_back(time);
        confirmation_order_.push_back(t.id);
      }
      break;
    case EventKind::Dropped:
      fresh = t.dropped[i] == 0;
      t.dropped[i] = 1;
      break;
  }
  if (!fresh) {
    spdlog::debug("ignoring duplicate {} event for {} at {}", kind_name(kind), to_string(block.id),
                  to_string(node));
  }
  return fresh;
}

void MetricsRecorder::record_admission(const Block& block, NodeId node, SimTime time,
                                       Admission admission) {
  if (admission != Admission::Admitted) {
    ++rejections_[node.index];
    return;
  }
  BlockTimeline& t = track(block);
  if (!std::isnan(t.admit_time[node.index])) return;
  t.admit_time[node.index] = time;
  auto& buckets = admissions_[node.index];
  const auto b = static_cast<std::size_t>(std::max(0.0, std::floor(time)));
  if (b >= buckets.size()) buckets.resize(b + 1);
  ++buckets[b].count;
  buckets[b].delay_sum += time - block.issue_time;
}

void MetricsRecorder::record_drop(const Block& victim, NodeId node, SimTime time) {
  if (record_event(EventKind::Dropped, victim, node, time)) {
    drops_.push_back({time, node, victim.issuer});
  }
}

std::vector<RateRow> MetricsRecorder::scaled_rates(SimTime window_s, SimTime now) const {
  std::vector<RateRow> rows;
  rows.reserve(modes_.size());
  const SimTime lo = now - window_s;
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    const NodeId id{static_cast<std::uint32_t>(i)};
    RateRow row;
    row.time = now;
    row.node = id;
    row.mode = mode_label(modes_[i]);
    row.rep = rep_[id];
    row.dr = static_cast<double>(count_in_window(disseminations_[i], lo, now)) / window_s;
    row.cr = static_cast<double>(count_in_window(confirmations_[i], lo, now)) / window_s;
    row.dr_scaled = row.dr / row.rep;
    row.cr_scaled = row.cr / row.rep;
    rows.push_back(std::move(row));
  }
  return rows;
}

void MetricsRecorder::sample_rates(SimTime now) {
  for (auto& row : scaled_rates(rate_window_s_, now)) rates_.push_back(std::move(row));
}

void MetricsRecorder::sample_tips(NodeId node, SimTime now, std::size_t tip_count) {
  tips_.push_back({now, node, tip_count});
}

std::vector<LatencyRow> MetricsRecorder::latency_rows() const {
  std::vector<LatencyRow> rows;
  rows.reserve(confirmation_order_.size());
  for (const BlockId id : confirmation_order_) {
    const BlockTimeline& t = blocks_[static_cast<std::size_t>(id.value)];
    rows.push_back({t.id, t.issuer, t.issue_time, *t.fully_confirmed_time,
                    *t.fully_confirmed_time - t.issue_time});
  }
  return rows;
}

}  // namespace tanglesim

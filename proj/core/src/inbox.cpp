#include "tanglesim/inbox.hpp"

#include <algorithm>
#include <stdexcept>

namespace tanglesim {

Inbox::Inbox(std::size_t issuers, std::size_t max_occupancy)
    : queues_(issuers), max_occupancy_(max_occupancy) {
  if (max_occupancy_ == 0) throw std::invalid_argument("Inbox: capacity must be positive");
}

NodeId Inbox::drop_target(const ReputationVector& rep) const {
  std::size_t best = queues_.size();
  double best_scaled = -1.0;
  for (std::size_t i = 0; i < queues_.size(); ++i) {
    const std::size_t len = queues_[i].size();
    if (len == 0) continue;
    const double scaled = static_cast<double>(len) / rep[NodeId{static_cast<std::uint32_t>(i)}];
    if (best == queues_.size() || scaled > best_scaled ||
        (scaled == best_scaled && len > queues_[best].size())) {
      best = i;
      best_scaled = scaled;
    }
  }
  return NodeId{static_cast<std::uint32_t>(best)};
}

EnqueueResult Inbox::enqueue(const ReputationVector& rep, QueuedBlock item) {
  EnqueueResult result;
  if (!seen_.insert(item.block->id).second) {
    result.status = EnqueueResult::Status::DuplicateDropped;
    return result;
  }
  queues_.at(item.block->issuer.index).push_back(std::move(item));
  ++occupancy_;
  while (occupancy_ > max_occupancy_) {
    result.victims.push_back(pop(drop_target(rep)));
  }
  return result;
}

QueuedBlock Inbox::pop(NodeId issuer) {
  auto& q = queues_.at(issuer.index);
  if (q.empty()) throw PipelineError("Inbox::pop on empty queue of " + to_string(issuer));
  QueuedBlock item = std::move(q.front());
  q.pop_front();
  --occupancy_;
  return item;
}

DrrScheduler::DrrScheduler(const ReputationVector& rep) {
  const auto& v = rep.values();
  const double top = *std::max_element(v.begin(), v.end());
  quantum_.reserve(v.size());
  for (const double r : v) quantum_.push_back(r / top);
  deficit_.assign(quantum_.size(), 0.0);
}

DrrScheduler::DrrScheduler(std::vector<double> quanta) : quantum_(std::move(quanta)) {
  for (const double q : quantum_) {
    if (!(q > 0.0)) throw std::invalid_argument("DrrScheduler: quanta must be positive");
  }
  deficit_.assign(quantum_.size(), 0.0);
}

void DrrScheduler::advance() {
  cursor_ = (cursor_ + 1) % quantum_.size();
  topped_up_ = false;
}

std::optional<QueuedBlock> DrrScheduler::next(Inbox& inbox) {
  if (inbox.empty()) return std::nullopt;
  for (;;) {
    const NodeId issuer{static_cast<std::uint32_t>(cursor_)};
    if (inbox.queue_length(issuer) == 0) {
      deficit_[cursor_] = 0.0;
      advance();
      continue;
    }
    if (!topped_up_) {
      deficit_[cursor_] += quantum_[cursor_];
      topped_up_ = true;
    }
    if (deficit_[cursor_] >= 1.0) {
      deficit_[cursor_] -= 1.0;
      QueuedBlock served = inbox.pop(issuer);
      if (inbox.queue_length(issuer) == 0) {
        deficit_[cursor_] = 0.0;
        advance();
      }
      return served;
    }
    advance();
  }
}

}  // namespace tanglesim

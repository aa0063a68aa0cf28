#include "tanglesim/engine.hpp"

#include <cmath>
#include <queue>
#include <unordered_set>

#include <spdlog/spdlog.h>

#include "tanglesim/node.hpp"

namespace tanglesim {
namespace {

enum class EventKindTag : std::uint8_t {
  Deliver,
  ServiceTick,
  IssueArrival,
  RateTick,
  MetricsSample,
  RequestParent,
};

struct Event {
  Event(SimTime t, std::uint64_t s, EventKindTag k, std::uint32_t n = 0, std::uint32_t o = 0,
        std::uint64_t a = 0)
      : time(t), seq(s), kind(k), node(n), other(o), aux(a) {}

  SimTime time = 0.0;
  std::uint64_t seq = 0;
  EventKindTag kind = EventKindTag::MetricsSample;
  std::uint32_t node = 0;   // receiver / acting node
  std::uint32_t other = 0;  // sender (Deliver), holder (RequestParent), stream (IssueArrival)
  std::uint64_t aux = 0;    // generation (IssueArrival), block id (RequestParent)
  BlockRef block;           // Deliver only
};

struct Later {
  bool operator()(const Event& a, const Event& b) const {
    if (a.time != b.time) return a.time > b.time;
    return a.seq > b.seq;
  }
};

constexpr std::uint32_t kNoSender = 0xffffffffu;

NodeParams node_params(const ScenarioConfig& c) {
  NodeParams p;
  p.nu = c.nu;
  p.cw_threshold = c.cw_threshold;
  p.max_inbox = c.max_inbox;
  p.k_parents = c.k_parents;
  p.tips.pct_threshold = c.pct_threshold_s;
  p.tips.bfs_horizon = c.bfs_horizon_s;
  p.tips.pct_enabled = c.pct_enabled;
  p.tips.search = c.cone_search;
  p.aimd = c.aimd;
  p.weight_mode = c.weight_mode;
  return p;
}

class Simulation {
 public:
  Simulation(const ScenarioConfig& config, std::uint64_t seed)
      : config_(config),
        seed_(seed),
        reputations_(sample_reputations(config.n, config.zipf_exponent)),
        topology_(make_topology(config, seed)),
        metrics_(reputations_, config.modes, config.rate_window_s),
        delay_rng_(derive_seed(seed, "delay")),
        service_period_(1.0 / config.nu) {
    const NodeParams params = node_params(config);
    genesis_ = make_block(BlockId{0}, NodeId{0}, 0.0, {});
    nodes_.reserve(config.n);
    for (std::size_t i = 0; i < config.n; ++i) {
      const NodeId id{static_cast<std::uint32_t>(i)};
      nodes_.emplace_back(id, config.modes[i], reputations_, topology_.neighbors(id), params,
                          genesis_);
      issue_rng_.emplace_back(derive_seed(seed, "issuance", i));
      tip_rng_.emplace_back(derive_seed(seed, "tips", i));
    }
    generation_.assign(config.n, 0);
    service_armed_.assign(config.n, 0);
    last_service_.assign(config.n, -service_period_);
    issued_.assign(config.n, 0);
  }

  RunResult execute(std::size_t run_index) {
    const SimTime end = config_.duration_s;
    if (end > 0.0) {
      push({0.0, 0, EventKindTag::MetricsSample});
      for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const auto n = static_cast<std::uint32_t>(i);
        start_streams(n, 0.0);
        if (std::holds_alternative<BestEffort>(nodes_[i].mode())) {
          push({config_.aimd.update_period_s, 0, EventKindTag::RateTick, n});
        }
      }
    }

    while (!queue_.empty() && queue_.top().time <= end) {
      Event ev = queue_.top();
      queue_.pop();
      now_ = ev.time;
      ++events_;
      dispatch(ev);
    }
    if (end > 0.0 && queue_.empty()) {
      throw PipelineError("event queue exhausted at t=" + std::to_string(now_) +
                          " before the run ended");
    }

    std::vector<NodeSnapshot> snapshots;
    snapshots.reserve(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const Node& node = nodes_[i];
      snapshots.push_back({node.tip_pool().tip_count(), node.ledger().solid_count(),
                           node.ledger().pending_count(), node.ledger().scheduled_count(),
                           node.inbox().occupancy(), issued_[i], node.rate_setter().lambda()});
    }
    return RunResult{config_,
                     seed_,
                     run_index,
                     std::move(topology_),
                     std::move(reputations_),
                     config_.modes,
                     std::move(metrics_),
                     std::move(multirate_),
                     std::move(snapshots),
                     events_,
                     next_block_ - 1,
                     requests_};
  }

 private:
  static Topology make_topology(const ScenarioConfig& c, std::uint64_t seed) {
    Rng rng(derive_seed(seed, "topology"));
    try {
      return build_topology(c.n, c.degree, c.delay_min_s, c.delay_max_s, rng);
    } catch (const TopologyError& e) {
      throw TopologyError(std::string(e.what()) + " (seed " + std::to_string(seed) + ")");
    }
  }

  void push(Event ev) {
    ev.seq = seq_++;
    queue_.push(std::move(ev));
  }

  SimTime link_delay(std::uint32_t from, std::uint32_t to) {
    if (config_.per_message_delay) return delay_rng_.uniform(config_.delay_min_s, config_.delay_max_s);
    return topology_.delay(NodeId{from}, NodeId{to});
  }

  void send(const BlockRef& block, std::uint32_t from, std::uint32_t to) {
    Event ev{now_ + link_delay(from, to), 0, EventKindTag::Deliver, to, from};
    ev.block = block;
    push(std::move(ev));
  }

  void arm_service(std::uint32_t n) {
    if (service_armed_[n] || nodes_[n].inbox().empty()) return;
    service_armed_[n] = 1;
    push({std::max(now_, last_service_[n] + service_period_), 0, EventKindTag::ServiceTick, n});
  }

  void start_streams(std::uint32_t n, SimTime from) {
    const auto streams = nodes_[n].streams();
    for (std::size_t s = 0; s < streams.size(); ++s) {
      if (streams[s].rate <= 0.0) continue;
      push({from + issue_rng_[n].exponential(streams[s].rate), 0, EventKindTag::IssueArrival, n,
            static_cast<std::uint32_t>(s), generation_[n]});
    }
  }

  void dispatch(const Event& ev) {
    switch (ev.kind) {
      case EventKindTag::Deliver: on_deliver(ev); break;
      case EventKindTag::ServiceTick: on_service(ev.node); break;
      case EventKindTag::IssueArrival: on_issue(ev); break;
      case EventKindTag::RateTick: on_rate_tick(ev.node); break;
      case EventKindTag::MetricsSample: on_sample(); break;
      case EventKindTag::RequestParent: on_request(ev); break;
    }
  }

  void record_effects(const Block& block, std::uint32_t n, const Node::ScheduledEffects& fx) {
    const NodeId id{n};
    metrics_.record_event(EventKind::Scheduled, block, id, now_);
    for (const BlockId c : fx.confirmed) {
      if (c == genesis_->id) continue;
      metrics_.record_event(EventKind::ConfirmedLocal, *nodes_[n].ledger().find(c)->block, id, now_);
    }
    metrics_.record_admission(block, id, now_, fx.admission);
  }

  void record_victims(std::uint32_t n, const std::vector<QueuedBlock>& victims) {
    for (const auto& v : victims) metrics_.record_drop(*v.block, NodeId{n}, now_);
  }

  void on_deliver(const Event& ev) {
    const std::uint32_t n = ev.node;
    const std::optional<NodeId> from =
        ev.other == kNoSender ? std::nullopt : std::optional<NodeId>(NodeId{ev.other});
    auto out = nodes_[n].receive(ev.block, from, now_);
    if (out.duplicate) return;
    metrics_.record_event(EventKind::Received, *ev.block, NodeId{n}, now_);
    record_victims(n, out.victims);
    if (config_.solidification_requests && from) {
      for (const BlockId p : out.missing) {
        if (!requested_.insert(request_key(n, p)).second) continue;
        ++requests_;
        push({now_ + link_delay(n, from->index), 0, EventKindTag::RequestParent, n, from->index,
              p.value});
      }
    }
    for (const BlockId s : out.solidified) requested_.erase(request_key(n, s));
    arm_service(n);
  }

  void on_request(const Event& ev) {
    const std::uint32_t holder = ev.other;
    const LedgerEntry* entry = nodes_[holder].ledger().find(BlockId{ev.aux});
    requested_.erase(request_key(ev.node, BlockId{ev.aux}));
    if (entry == nullptr) {
      spdlog::debug("node#{} cannot serve request for block#{}", holder, ev.aux);
      return;
    }
    Event reply{now_ + link_delay(holder, ev.node), 0, EventKindTag::Deliver, ev.node, holder};
    reply.block = entry->block;
    push(std::move(reply));
  }

  void on_service(std::uint32_t n) {
    service_armed_[n] = 0;
    auto item = nodes_[n].next_scheduled();
    if (!item) return;
    last_service_[n] = now_;
    const auto fx = nodes_[n].on_scheduled_block(*item, now_);
    record_effects(*item->block, n, fx);
    for (const NodeId to : fx.forward_to) send(item->block, n, to.index);
    if (!nodes_[n].inbox().empty()) {
      service_armed_[n] = 1;
      push({now_ + service_period_, 0, EventKindTag::ServiceTick, n});
    }
  }

  void on_issue(const Event& ev) {
    const std::uint32_t n = ev.node;
    if (ev.aux != generation_[n]) return;  // superseded by a rate change
    Node& node = nodes_[n];
    const auto streams = node.streams();
    const IssueStream& stream = streams.at(ev.other);

    if (node.tip_pool().tip_count() == 0) {
      spdlog::warn("node#{} has an empty tip pool at t={}; skipping issuance", n, now_);
      push({now_ + issue_rng_[n].exponential(stream.rate), 0, EventKindTag::IssueArrival, n,
            ev.other, ev.aux});
      return;
    }
    BlockRef block = node.create_block(BlockId{next_block_++}, now_, tip_rng_[n]);
    ++issued_[n];
    metrics_.record_event(EventKind::Issued, *block, NodeId{n}, now_);
    metrics_.record_event(EventKind::Received, *block, NodeId{n}, now_);

    switch (stream.route) {
      case IssueRoute::OwnInbox: {
        auto out = node.receive(block, std::nullopt, now_);
        record_victims(n, out.victims);
        arm_service(n);
        break;
      }
      case IssueRoute::DirectOne: {
        const auto fx = node.issue_direct(block, now_);
        record_effects(*block, n, fx);
        multirate_.record(*stream.target, block->id, now_);
        send(block, n, stream.target->index);
        break;
      }
    }
    push({now_ + issue_rng_[n].exponential(stream.rate), 0, EventKindTag::IssueArrival, n, ev.other,
          ev.aux});
  }

  void on_rate_tick(std::uint32_t n) {
    const double before = nodes_[n].rate_setter().lambda();
    const double after = nodes_[n].rate_tick();
    if (after != before) {
      // Poisson arrivals are memoryless, so redrawing at the new rate is exact.
      ++generation_[n];
      start_streams(n, now_);
    }
    push({now_ + config_.aimd.update_period_s, 0, EventKindTag::RateTick, n});
  }

  void on_sample() {
    metrics_.sample_rates(now_);
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const NodeId id{static_cast<std::uint32_t>(i)};
      if (!metrics_.honest(id)) continue;
      metrics_.sample_tips(id, now_, nodes_[i].tip_pool().tip_count());
    }
    push({now_ + config_.metrics_sample_period_s, 0, EventKindTag::MetricsSample});
  }

  std::uint64_t request_key(std::uint32_t node, BlockId id) const {
    return id.value * config_.n + node;
  }

  const ScenarioConfig& config_;
  std::uint64_t seed_;
  ReputationVector reputations_;
  Topology topology_;
  MetricsRecorder metrics_;
  MultiRateLog multirate_;
  Rng delay_rng_;
  SimTime service_period_;

  BlockRef genesis_;
  std::vector<Node> nodes_;
  std::vector<Rng> issue_rng_;
  std::vector<Rng> tip_rng_;
  std::vector<std::uint64_t> generation_;
  std::vector<std::uint8_t> service_armed_;
  std::vector<SimTime> last_service_;
  std::vector<std::size_t> issued_;
  std::unordered_set<std::uint64_t> requested_;

  std::priority_queue<Event, std::vector<Event>, Later> queue_;
  std::uint64_t seq_ = 0;
  SimTime now_ = 0.0;
  std::uint64_t events_ = 0;
  std::uint64_t next_block_ = 1;
  std::uint64_t requests_ = 0;
};

}  // namespace

std::uint64_t run_seed(const ScenarioConfig& config, std::size_t run_index) {
  return config.seed + run_index;
}

RunResult run(const ScenarioConfig& config, std::size_t run_index) {
  config.validate();
  const std::uint64_t seed = run_seed(config, run_index);
  spdlog::debug("run {} of '{}' with seed {}", run_index, config.name, seed);
  Simulation sim(config, seed);
  return sim.execute(run_index);
}

std::vector<RunResult> run_monte_carlo(const ScenarioConfig& config) {
  config.validate();
  std::vector<RunResult> results;
  results.reserve(config.runs);
  for (std::size_t i = 0; i < config.runs; ++i) {
    try {
      results.push_back(run(config, i));
    } catch (const std::exception& e) {
      throw RunError(i, e.what());
    }
  }
  return results;
}

}  // namespace tanglesim

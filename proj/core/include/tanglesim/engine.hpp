#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "tanglesim/adversary.hpp"
#include "tanglesim/config.hpp"
#include "tanglesim/metrics.hpp"
#include "tanglesim/reputation.hpp"
#include "tanglesim/topology.hpp"

namespace tanglesim {

/// Final per-node state captured when a run ends.
struct NodeSnapshot {
  std::size_t tip_count = 0;
  std::size_t solid = 0;
  std::size_t pending = 0;
  std::size_t scheduled = 0;
  std::size_t inbox_occupancy = 0;
  std::size_t issued = 0;
  double final_rate = 0.0;
};

struct RunResult {
  ScenarioConfig config;
  std::uint64_t seed = 0;
  std::size_t run_index = 0;
  Topology topology;
  ReputationVector reputations;
  std::vector<NodeMode> modes;
  MetricsRecorder metrics;
  MultiRateLog multirate;
  std::vector<NodeSnapshot> nodes;
  std::uint64_t events_processed = 0;
  std::uint64_t blocks_issued = 0;
  std::uint64_t parent_requests = 0;
};

/// Error raised by a Monte Carlo replication; carries the failing run index.
class RunError : public std::runtime_error {
 public:
  RunError(std::size_t run_index, const std::string& what)
      : std::runtime_error("run " + std::to_string(run_index) + ": " + what), run_index_(run_index) {}
  [[nodiscard]] std::size_t run_index() const noexcept { return run_index_; }

 private:
  std::size_t run_index_;
};

/// Seed used for replication `run_index` of `config`.
[[nodiscard]] std::uint64_t run_seed(const ScenarioConfig& config, std::size_t run_index);

/// One replication. The config is validated first (ConfigError).
RunResult run(const ScenarioConfig& config, std::size_t run_index = 0);

/// `config.runs` independent replications with seeds seed+0 .. seed+runs-1.
/// Any failure is rethrown as RunError naming the run.
std::vector<RunResult> run_monte_carlo(const ScenarioConfig& config);

}  // namespace tanglesim

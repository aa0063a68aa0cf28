#include "tanglesim/topology.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace tanglesim {

Topology::Topology(std::size_t n, std::vector<std::vector<NodeId>> adjacency,
                   std::vector<std::vector<SimTime>> delays)
    : adjacency_(std::move(adjacency)), delay_(std::move(delays)) {
  if (adjacency_.size() != n || delay_.size() != n) {
    throw TopologyError("Topology: size mismatch");
  }
  for (auto& row : adjacency_) std::sort(row.begin(), row.end());
}

bool Topology::adjacent(NodeId a, NodeId b) const {
  const auto& row = adjacency_.at(a.index);
  return std::binary_search(row.begin(), row.end(), b);
}

SimTime Topology::delay(NodeId a, NodeId b) const {
  if (!adjacent(a, b)) {
    throw std::out_of_range("no link between " + to_string(a) + " and " + to_string(b));
  }
  return delay_[a.index][b.index];
}

bool Topology::connected() const {
  if (adjacency_.empty()) return true;
  std::vector<char> seen(adjacency_.size(), 0);
  std::vector<std::uint32_t> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const auto u = stack.back();
    stack.pop_back();
    for (const NodeId v : adjacency_[u]) {
      if (!seen[v.index]) {
        seen[v.index] = 1;
        ++reached;
        stack.push_back(v.index);
      }
    }
  }
  return reached == adjacency_.size();
}

std::size_t Topology::edge_count() const {
  std::size_t twice = 0;
  for (const auto& row : adjacency_) twice += row.size();
  return twice / 2;
}

namespace {

// One attempt at pairing stubs. Picks a random stub, then a random partner
// among stubs that would not create a loop or multi-edge; fails when stuck.
bool try_pairing(std::size_t n, std::size_t degree, Rng& rng,
                 std::vector<std::vector<NodeId>>& adjacency) {
  adjacency.assign(n, {});
  std::vector<std::uint32_t> stubs;
  stubs.reserve(n * degree);
  for (std::uint32_t v = 0; v < n; ++v) {
    for (std::size_t d = 0; d < degree; ++d) stubs.push_back(v);
  }
  auto linked = [&](std::uint32_t a, std::uint32_t b) {
    const auto& row = adjacency[a];
    return std::find(row.begin(), row.end(), NodeId{b}) != row.end();
  };
  std::vector<std::size_t> candidates;
  while (!stubs.empty()) {
    const std::size_t i = rng.below(stubs.size());
    const std::uint32_t u = stubs[i];
    candidates.clear();
    for (std::size_t j = 0; j < stubs.size(); ++j) {
      const std::uint32_t v = stubs[j];
      if (v != u && !linked(u, v)) candidates.push_back(j);
    }
    if (candidates.empty()) return false;
    const std::size_t j = candidates[rng.below(candidates.size())];
    const std::uint32_t v = stubs[j];
    adjacency[u].push_back(NodeId{v});
    adjacency[v].push_back(NodeId{u});
    // Remove the larger index first so the smaller stays valid.
    for (const std::size_t k : {std::max(i, j), std::min(i, j)}) {
      stubs[k] = stubs.back();
      stubs.pop_back();
    }
  }
  return true;
}

}  // namespace

Topology build_topology(std::size_t n, std::size_t degree, SimTime d_min, SimTime d_max, Rng& rng,
                        std::size_t max_attempts) {
  if (degree >= n) {
    throw TopologyError("degree " + std::to_string(degree) + " must be below node count " +
                        std::to_string(n));
  }
  if ((n * degree) % 2 != 0) throw TopologyError("n * degree must be even");
  if (!(d_min >= 0.0 && d_max >= d_min)) throw TopologyError("invalid delay range");

  std::vector<std::vector<NodeId>> adjacency;
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    if (!try_pairing(n, degree, rng, adjacency)) continue;
    std::vector<std::vector<SimTime>> delays(
        n, std::vector<SimTime>(n, std::numeric_limits<SimTime>::quiet_NaN()));
    Topology candidate(n, adjacency, delays);
    if (!candidate.connected()) continue;
    // Delays are drawn per undirected link in (lower, higher) id order.
    for (std::uint32_t a = 0; a < n; ++a) {
      for (const NodeId b : candidate.neighbors(NodeId{a})) {
        if (b.index <= a) continue;
        const SimTime d = rng.uniform(d_min, d_max);
        delays[a][b.index] = d;
        delays[b.index][a] = d;
      }
    }
    return Topology(n, std::move(adjacency), std::move(delays));
  }
  throw TopologyError("no connected " + std::to_string(degree) + "-regular graph on " +
                      std::to_string(n) + " nodes after " + std::to_string(max_attempts) +
                      " attempts");
}

}  // namespace tanglesim

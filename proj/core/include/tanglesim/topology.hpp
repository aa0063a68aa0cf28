#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "tanglesim/rng.hpp"
#include "tanglesim/types.hpp"

namespace tanglesim {

class TopologyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Undirected random regular graph with a fixed delay per link.
class Topology {
 public:
  Topology(std::size_t n, std::vector<std::vector<NodeId>> adjacency,
           std::vector<std::vector<SimTime>> delays);

  [[nodiscard]] std::size_t size() const noexcept { return adjacency_.size(); }
  [[nodiscard]] const std::vector<NodeId>& neighbors(NodeId n) const { return adjacency_.at(n.index); }
  [[nodiscard]] bool adjacent(NodeId a, NodeId b) const;
  /// Throws std::out_of_range for non-adjacent pairs.
  [[nodiscard]] SimTime delay(NodeId a, NodeId b) const;
  [[nodiscard]] bool connected() const;
  [[nodiscard]] std::size_t edge_count() const;

 private:
  std::vector<std::vector<NodeId>> adjacency_;  // sorted per node
  std::vector<std::vector<SimTime>> delay_;     // dense n x n, NaN off-graph
};

/// Random `degree`-regular connected graph on n nodes (stub pairing with
/// restarts); delays uniform in [d_min, d_max], drawn once per link.
/// Throws TopologyError if n*degree is odd, degree >= n, or no graph is found
/// within `max_attempts`.
Topology build_topology(std::size_t n, std::size_t degree, SimTime d_min, SimTime d_max, Rng& rng,
                        std::size_t max_attempts = 10000);

}  // namespace tanglesim

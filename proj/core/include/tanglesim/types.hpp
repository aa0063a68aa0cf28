#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace tanglesim {

/// Simulation clock, in seconds.
using SimTime = double;

inline constexpr SimTime kInfiniteHorizon = std::numeric_limits<SimTime>::infinity();

struct BlockId {
  std::uint64_t value = 0;
  friend constexpr auto operator<=>(BlockId, BlockId) = default;
};

struct NodeId {
  std::uint32_t index = 0;
  friend constexpr auto operator<=>(NodeId, NodeId) = default;
};

/// Immutable ledger unit. Shared between views through BlockRef; never mutated
/// after construction.
struct Block {
  BlockId id;
  NodeId issuer;
  SimTime issue_time = 0.0;
  std::vector<BlockId> parents;  // empty only for genesis
  std::uint32_t payload_size = 1;

  [[nodiscard]] bool is_genesis() const noexcept { return parents.empty(); }
};

using BlockRef = std::shared_ptr<const Block>;

inline BlockRef make_block(BlockId id, NodeId issuer, SimTime issue_time,
                           std::vector<BlockId> parents) {
  return std::make_shared<const Block>(Block{id, issuer, issue_time, std::move(parents), 1});
}

/// Raised when a block violates the structural invariants (self-parent,
/// duplicate parents, parentless non-genesis, non-increasing timestamps).
class MalformedBlock : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a per-node pipeline stage is invoked out of order, e.g.
/// scheduling a block that is not solid. Always a simulator bug.
class PipelineError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

std::string to_string(BlockId id);
std::string to_string(NodeId id);

}  // namespace tanglesim

template <>
struct std::hash<tanglesim::BlockId> {
  std::size_t operator()(tanglesim::BlockId id) const noexcept {
    // splitmix64 finalizer; ids are sequential so identity hashing clusters.
    std::uint64_t z = id.value + 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return static_cast<std::size_t>(z ^ (z >> 31));
  }
};

template <>
struct std::hash<tanglesim::NodeId> {
  std::size_t operator()(tanglesim::NodeId id) const noexcept {
    return std::hash<std::uint32_t>{}(id.index);
  }
};

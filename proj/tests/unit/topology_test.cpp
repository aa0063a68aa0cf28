#include <gtest/gtest.h>

#include "tanglesim/topology.hpp"

namespace tanglesim {
namespace {

TEST(Topology, TwentyNodeFourRegular) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Rng rng(seed);
    const Topology t = build_topology(20, 4, 0.05, 0.15, rng);
    ASSERT_TRUE(t.connected());
    EXPECT_EQ(t.edge_count(), 40u);
    for (std::uint32_t i = 0; i < 20; ++i) {
      const auto& nb = t.neighbors(NodeId{i});
      ASSERT_EQ(nb.size(), 4u);
      for (const NodeId j : nb) {
        EXPECT_NE(j, NodeId{i});
        EXPECT_TRUE(t.adjacent(j, NodeId{i}));
        const SimTime d = t.delay(NodeId{i}, j);
        EXPECT_GE(d, 0.05);
        EXPECT_LE(d, 0.15);
        EXPECT_EQ(d, t.delay(j, NodeId{i}));
      }
    }
  }
}

TEST(Topology, FiveNodesDegreeFourIsComplete) {
  Rng rng(1);
  const Topology t = build_topology(5, 4, 0.05, 0.15, rng);
  for (std::uint32_t i = 0; i < 5; ++i) {
    for (std::uint32_t j = 0; j < 5; ++j) {
      EXPECT_EQ(t.adjacent(NodeId{i}, NodeId{j}), i != j);
    }
  }
}

TEST(Topology, SameSeedSameGraph) {
  Rng a(8), b(8);
  const Topology x = build_topology(20, 4, 0.05, 0.15, a);
  const Topology y = build_topology(20, 4, 0.05, 0.15, b);
  for (std::uint32_t i = 0; i < 20; ++i) {
    ASSERT_EQ(x.neighbors(NodeId{i}), y.neighbors(NodeId{i}));
    for (const NodeId j : x.neighbors(NodeId{i})) ASSERT_EQ(x.delay(NodeId{i}, j), y.delay(NodeId{i}, j));
  }
}

TEST(Topology, Errors) {
  Rng rng(1);
  EXPECT_THROW(build_topology(5, 3, 0.05, 0.15, rng), TopologyError);
  EXPECT_THROW(build_topology(4, 4, 0.05, 0.15, rng), TopologyError);
  EXPECT_THROW(build_topology(6, 2, 0.2, 0.1, rng), TopologyError);
  const Topology t = build_topology(6, 2, 0.05, 0.15, rng);
  NodeId far{0};
  for (std::uint32_t j = 1; j < 6; ++j) {
    if (!t.adjacent(NodeId{0}, NodeId{j})) far = NodeId{j};
  }
  EXPECT_THROW((void)t.delay(NodeId{0}, far), std::out_of_range);
}

}  // namespace
}  // namespace tanglesim

#include <gtest/gtest.h>

#include <random>

#include "flowpart/flow_network.hpp"
#include "flowpart/oracle.hpp"
#include "flowpart/subhypergraph.hpp"
#include "test_support.hpp"

namespace flowpart {
namespace {

using testing::random_assignment;
using testing::random_hypergraph;
using testing::tiny_example;

SubHypergraph whole_pair(const Hypergraph& hg, const PartitionK& part) {
  std::vector<VertexId> members;
  for (VertexId v = 0; v < hg.num_vertices(); ++v)
    if (part.block(v) == 0 || part.block(v) == 1) members.push_back(v);
  return induced_subhypergraph(hg, part, 0, 1, members);
}

// ---------------------------------------------------------------------------
// frozen sizes on the running example, all of it taken as the corridor
// ---------------------------------------------------------------------------

TEST(Networks, SizesOnTinyExample) {
  const Hypergraph hg = tiny_example();
  PartitionK part(hg, 2, 0.03, {0, 0, 1, 1});
  const SubHypergraph sub = whole_pair(hg, part);

  const auto lawler = network_stats(build_network(sub, {NetworkVariant::lawler, {}, {}}));
  EXPECT_EQ(lawler.num_nodes, 10);  // 4 + 2 * 3
  EXPECT_EQ(lawler.num_arcs, 17);   // 3 + 2 * 7
  EXPECT_EQ(lawler.num_infinite_arcs, 14);

  const auto lw = network_stats(build_network(sub, {NetworkVariant::liu_wong, {}, {}}));
  EXPECT_EQ(lw.num_nodes, 6);  // 4 + 2 (only the 3-pin net is bridged)
  EXPECT_EQ(lw.num_arcs, 11);  // 2*2 direct + 1 bridge + 2*3 pin arcs
  EXPECT_EQ(lw.num_infinite_arcs, 6);

  const auto red = network_stats(build_network(sub, {NetworkVariant::reduced, {}, {}}));
  EXPECT_EQ(red.num_nodes, 5);  // only the degree-1 vertex disappears
  EXPECT_EQ(red.num_arcs, 9);
  EXPECT_EQ(red.num_infinite_arcs, 4);
}

TEST(Networks, RemovalRule) {
  const Hypergraph hg = tiny_example();
  PartitionK part(hg, 2, 0.03, {0, 0, 1, 1});
  const SubHypergraph sub = whole_pair(hg, part);
  const FlowNetwork net = build_network(sub, {NetworkVariant::reduced, {}, {}});
  // v1..v3 touch two-pin nets and must stay; v4 has degree 1 and no two-pin
  // net, so it hides behind the star of e2.
  EXPECT_FALSE(net.vertex_removed[sub.to_local_vertex(0)]);
  EXPECT_FALSE(net.vertex_removed[sub.to_local_vertex(1)]);
  EXPECT_FALSE(net.vertex_removed[sub.to_local_vertex(2)]);
  EXPECT_TRUE(net.vertex_removed[sub.to_local_vertex(3)]);
}

TEST(Networks, ExclusionVectorKeepsVertices) {
  const Hypergraph hg = tiny_example();
  PartitionK part(hg, 2, 0.03, {0, 0, 1, 1});
  const SubHypergraph sub = whole_pair(hg, part);
  std::vector<char> exclude(4, false);
  exclude[sub.to_local_vertex(3)] = true;
  const FlowNetwork net = build_network(sub, {NetworkVariant::reduced, exclude, {}});
  EXPECT_FALSE(net.vertex_removed[sub.to_local_vertex(3)]);
  EXPECT_EQ(network_stats(net).num_nodes, 6);
}

// A net with one pin: the Lawler expansion still spends a bridging pair on
// it, the sparser variants give it no representation at all.
TEST(Networks, SinglePinNet) {
  const Hypergraph hg(3, {{0}, {1, 2}});
  PartitionK part(hg, 2, 1.0, {0, 1, 1});
  const SubHypergraph sub = induced_subhypergraph(hg, part, 0, 1, {0});

  const auto lawler = network_stats(build_network(sub, {NetworkVariant::lawler, {}, {}}));
  EXPECT_EQ(lawler.num_nodes, 3);
  EXPECT_EQ(lawler.num_arcs, 3);

  const auto lw = network_stats(build_network(sub, {NetworkVariant::liu_wong, {}, {}}));
  EXPECT_EQ(lw.num_nodes, 1);
  EXPECT_EQ(lw.num_arcs, 0);

  // Degree 1, no two-pin net: the reduced variant removes the vertex too.
  const auto red = network_stats(build_network(sub, {NetworkVariant::reduced, {}, {}}));
  EXPECT_EQ(red.num_nodes, 0);
  EXPECT_EQ(red.num_arcs, 0);
}

// Removed vertices of shared nets are replaced by a directed clique over the
// bridging nodes of their nets; duplicate ordered pairs collapse.
TEST(Networks, RemovedVertexClique) {
  // v0 sits on three 3-pin nets and nothing else: removable, clique 3*2 = 6.
  const Hypergraph hg(5, {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}});
  PartitionK part(hg, 2, 1.0, {0, 0, 0, 1, 1});
  std::vector<VertexId> members{0, 1, 2, 3, 4};
  const SubHypergraph sub = induced_subhypergraph(hg, part, 0, 1, members);
  const FlowNetwork net = build_network(sub, {NetworkVariant::reduced, {}, {}});
  ASSERT_TRUE(net.vertex_removed[sub.to_local_vertex(0)]);
  int clique_arcs = 0;
  for (const FlowArc& a : net.arcs) {
    const FlowNode& from = net.nodes[a.from];
    const FlowNode& to = net.nodes[a.to];
    if (from.type == FlowNodeType::bridge_out && to.type == FlowNodeType::bridge_in &&
        from.ref != to.ref)
      ++clique_arcs;
  }
  EXPECT_EQ(clique_arcs, 6);
  const auto stats = network_stats(net);
  const auto predicted = counting_oracle(sub, NetworkVariant::reduced);
  EXPECT_EQ(stats.num_nodes, predicted.num_nodes);
  EXPECT_EQ(stats.num_arcs, predicted.num_arcs);
  EXPECT_EQ(stats.num_infinite_arcs, predicted.num_infinite_arcs);
}

// force_bridge expands a two-pin net with the full bridging gadget.
TEST(Networks, ForceBridgeOnTwoPinNet) {
  const Hypergraph hg(2, {{0, 1}});
  PartitionK part(hg, 2, 1.0, {0, 1});
  const SubHypergraph sub = induced_subhypergraph(hg, part, 0, 1, {0, 1});
  std::vector<NetRepr> repr{NetRepr::force_bridge};
  const FlowNetwork net =
      build_network(sub, {NetworkVariant::liu_wong, {}, repr});
  const auto stats = network_stats(net);
  EXPECT_EQ(stats.num_nodes, 4);  // 2 pins + bridge pair
  EXPECT_EQ(stats.num_arcs, 5);   // bridge + 4 pin arcs
}

// ---------------------------------------------------------------------------
// builder against the closed-form counting oracle on random corridors
// ---------------------------------------------------------------------------

TEST(Networks, SizesMatchCountingOracle) {
  std::mt19937_64 rng(23);
  int checked = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const Hypergraph hg = random_hypergraph({}, rng);
    if (hg.num_vertices() < 2) continue;
    PartitionK part(hg, 2, 1.0, random_assignment(hg.num_vertices(), 2, rng));
    std::vector<VertexId> members;
    for (VertexId v = 0; v < hg.num_vertices(); ++v)
      if (rng() % 3 != 0) members.push_back(v);
    if (members.empty()) continue;
    const SubHypergraph sub = induced_subhypergraph(hg, part, 0, 1, members);
    for (NetworkVariant variant :
         {NetworkVariant::lawler, NetworkVariant::liu_wong, NetworkVariant::reduced}) {
      const auto stats = network_stats(build_network(sub, {variant, {}, {}}));
      const auto predicted = counting_oracle(sub, variant);
      ASSERT_EQ(stats.num_nodes, predicted.num_nodes);
      ASSERT_EQ(stats.num_arcs, predicted.num_arcs);
      ASSERT_EQ(stats.num_infinite_arcs, predicted.num_infinite_arcs);
      ++checked;
    }
  }
  EXPECT_GE(checked, 900);
}

// Qualitative expectations: the sparser encodings pay off where promised.
TEST(Networks, SparsityOrdering) {
  std::mt19937_64 rng(31);
  // Two-pin heavy instance: most nets are graph edges.
  {
    testing::RandomHypergraphSpec spec;
    spec.min_vertices = 10;
    spec.max_vertices = 10;
    spec.min_nets = 25;
    spec.max_nets = 25;
    spec.max_net_size = 2;
    spec.allow_single_pin = false;
    const Hypergraph hg = random_hypergraph(spec, rng);
    PartitionK part(hg, 2, 1.0, random_assignment(hg.num_vertices(), 2, rng));
    std::vector<VertexId> all;
    for (VertexId v = 0; v < hg.num_vertices(); ++v) all.push_back(v);
    const SubHypergraph sub = induced_subhypergraph(hg, part, 0, 1, all);
    const auto lawler = network_stats(build_network(sub, {NetworkVariant::lawler, {}, {}}));
    const auto lw = network_stats(build_network(sub, {NetworkVariant::liu_wong, {}, {}}));
    EXPECT_LT(lw.num_arcs, lawler.num_arcs);
    EXPECT_LT(lw.num_nodes, lawler.num_nodes);
  }
  // Low-degree multi-pin instance: stars over few, large nets.
  {
    std::vector<std::vector<VertexId>> nets;
    for (int e = 0; e < 4; ++e) {
      std::vector<VertexId> pins;
      for (int p = 0; p < 5; ++p) pins.push_back(static_cast<VertexId>(e * 5 + p));
      nets.push_back(pins);
    }
    const Hypergraph hg(20, std::move(nets));
    std::vector<BlockId> assignment(20, 0);
    for (VertexId v = 10; v < 20; ++v) assignment[v] = 1;
    PartitionK part(hg, 2, 1.0, assignment);
    std::vector<VertexId> all;
    for (VertexId v = 0; v < 20; ++v) all.push_back(v);
    const SubHypergraph sub = induced_subhypergraph(hg, part, 0, 1, all);
    const auto lw = network_stats(build_network(sub, {NetworkVariant::liu_wong, {}, {}}));
    const auto red = network_stats(build_network(sub, {NetworkVariant::reduced, {}, {}}));
    EXPECT_LT(red.num_nodes, lw.num_nodes);
    EXPECT_LT(red.num_arcs, lw.num_arcs);
  }
}

}  // namespace
}  // namespace flowpart

#include <gtest/gtest.h>

#include <random>

#include "flowpart/hypergraph.hpp"
#include "flowpart/partition.hpp"
#include "flowpart/quotient.hpp"
#include "flowpart/subhypergraph.hpp"
#include "test_support.hpp"

namespace flowpart {
namespace {

using testing::random_assignment;
using testing::random_hypergraph;
using testing::tiny_example;

// ---------------------------------------------------------------------------
// construction and validation
// ---------------------------------------------------------------------------

TEST(Hypergraph, BasicAccessors) {
  const Hypergraph hg = tiny_example();
  EXPECT_EQ(hg.num_vertices(), 4);
  EXPECT_EQ(hg.num_nets(), 3);
  EXPECT_EQ(hg.num_pins(), 7);
  EXPECT_EQ(hg.net_size(1), 3);
  EXPECT_EQ(hg.degree(1), 2);
  EXPECT_EQ(hg.total_vertex_weight(), 4);
  hg.check_consistency();
}

TEST(Hypergraph, RejectsMalformedInput) {
  EXPECT_THROW(Hypergraph(2, {{}}), InputError);            // empty net
  EXPECT_THROW(Hypergraph(2, {{0, 0}}), InputError);        // duplicate pin
  EXPECT_THROW(Hypergraph(2, {{0, 2}}), InputError);        // pin out of range
  EXPECT_THROW(Hypergraph(2, {{0, 1}}, {0}), InputError);   // zero net weight
  EXPECT_THROW(Hypergraph(2, {{0, 1}}, {}, {1, 0}), InputError);
  EXPECT_THROW(Hypergraph(2, {{0, 1}}, {1, 1}), InputError);  // weight count
}

TEST(Hypergraph, CeilAverage) {
  EXPECT_EQ(ceil_average_weight(4, 2), 2);
  EXPECT_EQ(ceil_average_weight(5, 2), 3);
  EXPECT_EQ(ceil_average_weight(9, 4), 3);
}

// ---------------------------------------------------------------------------
// balance arithmetic
// ---------------------------------------------------------------------------

TEST(Partition, FeasibleBlockWeight) {
  // total 4, k = 2: ceil average 2, (1 + 0.03) * 2 = 2.06 -> 2.
  EXPECT_EQ(max_feasible_block_weight(4, 2, 0.03), 2);
  // total 9, k = 2: ceil average 5, 1.5 * 5 = 7.5 -> 7.
  EXPECT_EQ(max_feasible_block_weight(9, 2, 0.5), 7);
  // exact representable product stays exact.
  EXPECT_EQ(max_feasible_block_weight(8, 2, 0.25), 5);
}

TEST(Partition, MetricsOnTinyExample) {
  const Hypergraph hg = tiny_example();
  // {v1, v2 | v3, v4}: e2 and e3 cross.
  PartitionK part(hg, 2, 0.03, {0, 0, 1, 1});
  EXPECT_EQ(km1_metric(hg, part), 2);
  EXPECT_EQ(cut_metric(hg, part), 2);
  EXPECT_TRUE(part.is_balanced());
  EXPECT_DOUBLE_EQ(imbalance(part), 0.0);
  EXPECT_EQ(pair_cut_weight(hg, part, 0, 1), 2);
}

TEST(Partition, RejectsEmptyBlocksAndBadIds) {
  const Hypergraph hg = tiny_example();
  EXPECT_THROW(PartitionK(hg, 2, 0.03, {0, 0, 0, 0}), InputError);
  EXPECT_THROW(PartitionK(hg, 2, 0.03, {0, 0, 1, 2}), InputError);
  EXPECT_THROW(PartitionK(hg, 1, 0.03, {0, 0, 0, 0}), InputError);
  EXPECT_THROW(PartitionK(hg, 2, -0.1, {0, 0, 1, 1}), InputError);
}

TEST(Partition, MoveMaintainsWeights) {
  const Hypergraph hg = tiny_example();
  PartitionK part(hg, 2, 0.5, {0, 0, 1, 1});
  part.move(1, 1, hg);
  EXPECT_EQ(part.block_weight(0), 1);
  EXPECT_EQ(part.block_weight(1), 3);
  EXPECT_EQ(part.block(1), 1);
}

// km1 via the incremental pin-count table must match the direct formula on
// random instances and random move sequences.
TEST(Partition, PinCountTableMatchesDirectMetric) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const Hypergraph hg = random_hypergraph({}, rng);
    const int k = 2 + static_cast<int>(rng() % 3);
    if (hg.num_vertices() < k) continue;
    PartitionK part(hg, k, 1.0, random_assignment(hg.num_vertices(), k, rng));
    PinCountTable table(hg, part);
    Weight km1 = km1_metric(hg, part);
    for (int step = 0; step < 20; ++step) {
      const VertexId v = static_cast<VertexId>(rng() % hg.num_vertices());
      const BlockId from = part.block(v);
      const BlockId to = static_cast<BlockId>(rng() % k);
      const Weight delta = table.move_delta(hg, v, from, to);
      table.apply_move(hg, v, from, to);
      part.move(v, to, hg);
      km1 += delta;
      ASSERT_EQ(km1, km1_metric(hg, part));
      for (NetId e = 0; e < hg.num_nets(); ++e)
        ASSERT_EQ(table.lambda(e), connectivity(hg, part, e));
    }
  }
}

// ---------------------------------------------------------------------------
// quotient graph
// ---------------------------------------------------------------------------

TEST(Quotient, EdgesAreBlockPairsSharingNets) {
  const Hypergraph hg = tiny_example();
  PartitionK part(hg, 3, 1.0, {0, 1, 2, 2});
  const QuotientGraph q = QuotientGraph::build(hg, part);
  // e1 joins 0-1, e2 joins 1-2, e3 joins 0-2.
  ASSERT_EQ(q.edges.size(), 3u);
  EXPECT_EQ(q.edges[0], std::make_pair(0, 1));
  EXPECT_EQ(q.edges[1], std::make_pair(0, 2));
  EXPECT_EQ(q.edges[2], std::make_pair(1, 2));
}

// ---------------------------------------------------------------------------
// induced subhypergraph
// ---------------------------------------------------------------------------

TEST(SubHypergraph, ClassifiesNetsAndBorders) {
  const Hypergraph hg = tiny_example();
  PartitionK part(hg, 2, 0.03, {0, 0, 1, 1});
  // corridor {v2, v3}: e1 border (v1 outside), e2 border (v4 outside),
  // e3 border (v1 outside).
  const SubHypergraph sub = induced_subhypergraph(hg, part, 0, 1, {1, 2});
  EXPECT_EQ(sub.local().num_vertices(), 2);
  EXPECT_EQ(sub.local().num_nets(), 3);
  EXPECT_EQ(sub.net_class(0), NetClass::border);
  EXPECT_EQ(sub.net_class(1), NetClass::border);
  EXPECT_EQ(sub.net_class(2), NetClass::border);
  // e1 = {v1, v2}: external pin v1 sits in block 0.
  const NetId e1 = sub.to_local_net(0);
  EXPECT_TRUE(sub.external_in_i(e1));
  EXPECT_FALSE(sub.external_in_j(e1));
  // e2 = {v2, v3, v4}: external pin v4 sits in block 1.
  const NetId e2 = sub.to_local_net(1);
  EXPECT_FALSE(sub.external_in_i(e2));
  EXPECT_TRUE(sub.external_in_j(e2));
  // both corridor members touch border nets.
  EXPECT_TRUE(sub.is_internal_border(sub.to_local_vertex(1)));
  EXPECT_TRUE(sub.is_internal_border(sub.to_local_vertex(2)));
}

TEST(SubHypergraph, WholePairKeepsInternalNets) {
  const Hypergraph hg = tiny_example();
  PartitionK part(hg, 2, 0.03, {0, 0, 1, 1});
  const SubHypergraph sub = induced_subhypergraph(hg, part, 0, 1, {0, 1, 2, 3});
  EXPECT_EQ(sub.local().num_nets(), 3);
  for (NetId e = 0; e < 3; ++e) EXPECT_EQ(sub.net_class(e), NetClass::internal);
}

TEST(SubHypergraph, RejectsMembersOutsideThePair) {
  const Hypergraph hg = tiny_example();
  PartitionK part(hg, 3, 1.0, {0, 1, 2, 2});
  EXPECT_THROW(induced_subhypergraph(hg, part, 0, 1, {0, 2}), InputError);
}

}  // namespace
}  // namespace flowpart

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "flowpart/multilevel.hpp"
#include "test_support.hpp"

namespace flowpart {
namespace {

using testing::random_assignment;
using testing::random_hypergraph;
using testing::tiny_example;

Hypergraph path_hypergraph(VertexId n) {
  std::vector<std::vector<VertexId>> nets;
  for (VertexId v = 0; v + 1 < n; ++v) nets.push_back({v, v + 1});
  return Hypergraph(n, std::move(nets));
}

// ---------------------------------------------------------------------------
// contraction
// ---------------------------------------------------------------------------

TEST(Contract, MergesParallelNetsAndDropsSinglePinNets) {
  const Hypergraph hg(4, {{0, 1}, {0, 1}, {2, 3}, {1, 2, 3}}, {2, 3, 1, 1},
                      {1, 1, 1, 1});
  std::vector<VertexId> match = {1, 0, 3, 2};
  auto [coarse, coarse_of] = multilevel_detail::contract(hg, match);

  EXPECT_EQ(coarse.num_vertices(), 2);
  EXPECT_EQ(coarse_of, (std::vector<VertexId>{0, 0, 1, 1}));
  EXPECT_EQ(coarse.vertex_weight(0), 2);
  EXPECT_EQ(coarse.vertex_weight(1), 2);
  // {0,1} x2 and {2,3} collapse to single pins and vanish; {1,2,3} survives.
  ASSERT_EQ(coarse.num_nets(), 1);
  EXPECT_EQ(coarse.net_weight(0), 1);
  EXPECT_EQ(coarse.net_size(0), 2);
}

TEST(Contract, PreservesKm1OfProjectedAssignments) {
  std::mt19937_64 rng(777);
  testing::RandomHypergraphSpec spec;
  spec.min_vertices = 6;
  for (int trial = 0; trial < 80; ++trial) {
    const Hypergraph hg = random_hypergraph(spec, rng);
    // Random matching: shuffle and pair adjacent survivors half the time.
    std::vector<VertexId> order(hg.num_vertices());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<VertexId> match(hg.num_vertices(), kInvalidVertex);
    for (std::size_t i = 0; i + 1 < order.size(); i += 2) {
      if (rng() % 2) continue;
      match[order[i]] = order[i + 1];
      match[order[i + 1]] = order[i];
    }
    auto [coarse, coarse_of] = multilevel_detail::contract(hg, match);
    if (coarse.num_vertices() < 2) continue;

    const std::vector<BlockId> coarse_block =
        random_assignment(coarse.num_vertices(), 2, rng);
    std::vector<BlockId> fine_block(hg.num_vertices());
    for (VertexId v = 0; v < hg.num_vertices(); ++v)
      fine_block[v] = coarse_block[coarse_of[v]];

    const PartitionK coarse_part(coarse, 2, 1.0, coarse_block);
    const PartitionK fine_part(hg, 2, 1.0, fine_block);
    EXPECT_EQ(km1_metric(coarse, coarse_part), km1_metric(hg, fine_part));
    EXPECT_EQ(coarse.total_vertex_weight(), hg.total_vertex_weight());
  }
}

// ---------------------------------------------------------------------------
// coarsening
// ---------------------------------------------------------------------------

TEST(Coarsen, ReachesTargetOnAPath) {
  const Hypergraph hg = path_hypergraph(64);
  std::mt19937_64 rng(42);
  Hierarchy h = coarsen(hg, 8, rng);

  ASSERT_GE(h.levels.size(), 2u);
  EXPECT_EQ(h.levels.front().num_vertices(), 64);
  EXPECT_LE(h.levels.back().num_vertices(), 8);
  for (std::size_t l = 0; l + 1 < h.levels.size(); ++l) {
    EXPECT_LT(h.levels[l + 1].num_vertices(), h.levels[l].num_vertices());
    EXPECT_EQ(h.levels[l + 1].total_vertex_weight(), h.levels[l].total_vertex_weight());
    ASSERT_EQ(h.to_coarse[l].size(), static_cast<std::size_t>(h.levels[l].num_vertices()));
    for (VertexId v = 0; v < h.levels[l].num_vertices(); ++v)
      ASSERT_LT(h.to_coarse[l][v], h.levels[l + 1].num_vertices());
  }
}

TEST(Coarsen, ProjectionKeepsKm1AcrossTheHierarchy) {
  std::mt19937_64 rng(909);
  testing::RandomHypergraphSpec spec;
  spec.min_vertices = 30;
  spec.max_vertices = 60;
  spec.min_nets = 40;
  spec.max_nets = 90;
  for (int trial = 0; trial < 10; ++trial) {
    const Hypergraph hg = random_hypergraph(spec, rng);
    Hierarchy h = coarsen(hg, 8, rng);
    PartitionK part(h.levels.back(), 2, 1.0,
                    random_assignment(h.levels.back().num_vertices(), 2, rng));
    Weight km1 = km1_metric(h.levels.back(), part);
    for (int level = static_cast<int>(h.levels.size()) - 2; level >= 0; --level) {
      part = project_partition(h.levels[level], h.to_coarse[level], part);
      EXPECT_EQ(km1_metric(h.levels[level], part), km1);
    }
  }
}

// ---------------------------------------------------------------------------
// initial partitioning
// ---------------------------------------------------------------------------

TEST(InitialPartition, FeasibleOnUnitWeights) {
  std::mt19937_64 rng(321);
  testing::RandomHypergraphSpec spec;
  spec.min_vertices = 8;
  spec.max_vertices = 16;
  for (int trial = 0; trial < 40; ++trial) {
    const Hypergraph hg = random_hypergraph(spec, rng);
    const int k = 2 + static_cast<int>(rng() % 3);
    PartitionK part = initial_partition(hg, k, 0.03, 16, rng);
    // Unit weights make the balanced target always attainable.
    EXPECT_TRUE(part.is_balanced());
    EXPECT_EQ(part.k(), k);
    for (BlockId b = 0; b < k; ++b) EXPECT_GT(part.block_weight(b), 0);
  }
}

// ---------------------------------------------------------------------------
// FM refinement
// ---------------------------------------------------------------------------

TEST(FmPass, NeverWorsensAndKeepsBalance) {
  std::mt19937_64 rng(1357);
  testing::RandomHypergraphSpec spec;
  spec.min_vertices = 8;
  int improved_total = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const Hypergraph hg = random_hypergraph(spec, rng);
    const int k = 2 + static_cast<int>(rng() % 3);
    PartitionK part(hg, k, 0.5, random_assignment(hg.num_vertices(), k, rng));
    const Weight km1_before = km1_metric(hg, part);
    const Weight worst_before = part.heaviest_block();
    const bool balanced_before = part.is_balanced();

    improved_total += fm_pass(hg, part, rng) ? 1 : 0;

    EXPECT_LE(km1_metric(hg, part), km1_before);
    if (balanced_before) EXPECT_TRUE(part.is_balanced());
    EXPECT_LE(part.heaviest_block(), std::max(part.l_max(), worst_before));
    for (BlockId b = 0; b < k; ++b) EXPECT_GT(part.block_weight(b), 0);
  }
  EXPECT_GT(improved_total, 0);  // random partitions leave FM plenty to do
}

// ---------------------------------------------------------------------------
// full pipeline
// ---------------------------------------------------------------------------

TEST(Partition, TinyExampleFindsTheOptimum) {
  const Hypergraph hg = tiny_example();

  PartitionerConfig loose;
  loose.k = 2;
  loose.epsilon = 0.5;
  PartitionResult res = partition(hg, loose);
  EXPECT_EQ(res.km1, 1);  // the three-one split cuts only the triple net
  EXPECT_TRUE(res.balanced);
  EXPECT_EQ(res.levels, 1);  // far below the coarsening target

  PartitionerConfig tight;
  tight.k = 2;
  tight.epsilon = 0.03;
  res = partition(hg, tight);
  EXPECT_EQ(res.km1, 2);  // every two-two split cuts two nets
  EXPECT_TRUE(res.balanced);
}

TEST(Partition, DeterministicGivenSeed) {
  std::mt19937_64 rng(246);
  testing::RandomHypergraphSpec spec;
  spec.min_vertices = 12;
  spec.max_vertices = 12;
  const Hypergraph hg = random_hypergraph(spec, rng);

  PartitionerConfig cfg;
  cfg.k = 3;
  cfg.epsilon = 0.1;
  cfg.seed = 99;
  const PartitionResult a = partition(hg, cfg);
  const PartitionResult b = partition(hg, cfg);
  EXPECT_EQ(a.km1, b.km1);
  for (VertexId v = 0; v < hg.num_vertices(); ++v)
    EXPECT_EQ(a.part.block(v), b.part.block(v));
}

TEST(Partition, MediumInstanceCoarsensAndStaysBalanced) {
  std::mt19937_64 rng(5150);
  testing::RandomHypergraphSpec spec;
  spec.min_vertices = 220;
  spec.max_vertices = 220;
  spec.min_nets = 330;
  spec.max_nets = 330;
  spec.max_net_size = 4;
  const Hypergraph hg = random_hypergraph(spec, rng);

  PartitionerConfig cfg;
  cfg.k = 4;
  cfg.epsilon = 0.03;
  cfg.seed = 7;
  const PartitionResult res = partition(hg, cfg);
  EXPECT_GE(res.levels, 2);
  EXPECT_TRUE(res.balanced);
  EXPECT_EQ(res.km1, km1_metric(hg, res.part));
  EXPECT_GT(res.stats.flow_calls, 0);
}

}  // namespace
}  // namespace flowpart
